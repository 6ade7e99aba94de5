#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include <boost/numeric/odeint.hpp>

#include "common.hpp"
#include "errors.hpp"
#include "path.hpp"

namespace oscsheet {

/// The three parameters of the Gauss hypergeometric function.
struct HyperParams {
    cplx a{}, b{}, c{};

    HyperParams(cplx a_, cplx b_, cplx c_) : a(a_), b(b_), c(c_) {
        // c = 0, -1, -2, ... makes the series coefficients blow up
        if (std::abs(c.imag()) < 1e-14) {
            const double cr = c.real();
            if (cr < 0.5 && std::abs(cr - std::round(cr)) < 1e-14)
                throw pole_error("HyperParams: c must not be zero or a negative integer");
        }
    }
};

/// Carrier for ODE transport: argument, value and derivative at that argument.
struct HyperState {
    cplx z{}, f{}, df{};
};

namespace detail {

// Asymptotic expansion coefficients B_{2n} / (2n (2n-1)).
inline constexpr std::array<double, 10> stirling_coeffs = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

// Valid for Re z >= 12.
inline cplx ln_gamma_asymptotic(cplx z) {
    const cplx lz = std::log(z);
    cplx sum = (z - 0.5) * lz - z + 0.5 * std::log(2.0 * pi);
    const cplx z2 = z * z;
    cplx zp = z;
    for (double coeff : stirling_coeffs) {
        sum += coeff / zp;
        zp *= z2;
    }
    return sum;
}

} // namespace detail

/// Principal-branch log-Gamma: real on the positive real axis, analytic off
/// the cut along the nonpositive reals.  Arguments with small real part are
/// shifted up with ln G(z) = ln G(z+n) - sum ln(z+k), which preserves the
/// principal branch because every ln(z+k) cut lies inside the gamma cut.
inline cplx ln_gamma(cplx z) {
    if (std::abs(z.imag()) < 1e-13) {
        const double zr = z.real();
        if (zr < 0.5 && std::abs(zr - std::round(zr)) < 1e-13)
            throw pole_error("ln_gamma: pole at nonpositive integer");
    }
    constexpr double shift_threshold = 12.0;
    cplx correction = 0.0;
    while (z.real() < shift_threshold) {
        correction += std::log(z);
        z += 1.0;
    }
    return detail::ln_gamma_asymptotic(z) - correction;
}

inline cplx gamma_fn(cplx z) { return std::exp(ln_gamma(z)); }

/// Rising factorial (a)_m = a (a+1) ... (a+m-1), with (a)_0 = 1.
inline cplx pochhammer(cplx a, int m) {
    if (m < 0) throw std::invalid_argument("pochhammer: m must be nonnegative");
    cplx p = 1.0;
    for (int k = 0; k < m; ++k) p *= a + static_cast<double>(k);
    return p;
}

/// Gauss series for 2F1(a, b; c; z), restricted to |z| <= 0.8 so the term
/// ratio stays geometric.  Terminates once a term drops below 1e-16 of the
/// accumulated sum; 500 terms is more than the margin ever needs.
inline cplx hyp2f1_series(const HyperParams& p, cplx z) {
    if (std::abs(z) > 0.8 + 1e-15)
        throw margin_error("hyp2f1_series: |z| exceeds the 0.8 series margin");
    cplx term = 1.0;
    cplx sum = 1.0;
    for (int m = 0; m < 500; ++m) {
        const double md = static_cast<double>(m);
        term *= (p.a + md) * (p.b + md) / ((p.c + md) * (md + 1.0)) * z;
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum)) return sum;
    }
    throw convergence_error("hyp2f1_series: term cap reached before tolerance");
}

namespace detail {

using ode_state = std::array<double, 4>;   // re f, im f, re f', im f'

struct Hyp2f1Rhs {
    HyperParams p;
    cplx z0, dz;   // straight segment z(t) = z0 + t dz, t in [0, 1]

    void operator()(const ode_state& s, ode_state& dsdt, double t) const {
        const cplx z = z0 + t * dz;
        const cplx f{s[0], s[1]};
        const cplx fp{s[2], s[3]};
        const cplx fpp = (p.a * p.b * f - (p.c - (p.a + p.b + 1.0) * z) * fp) / (z * (1.0 - z));
        const cplx df = dz * fp;
        const cplx dfp = dz * fpp;
        dsdt = {df.real(), df.imag(), dfp.real(), dfp.imag()};
    }
};

} // namespace detail

/// Transport of a hypergeometric solution along a polyline in the z-plane by
/// integrating the defining equation with an adaptive embedded pair (local
/// tolerance 1e-12).  The whole path must stay at least 1e-3 away from the
/// singular points z = 0 and z = 1.
inline HyperState hyp2f1_transport(const HyperParams& p, const PathSpec& path,
                                   const HyperState& initial) {
    constexpr double clearance = 1e-3;
    const auto pts = path.polyline();
    if (std::abs(initial.z - path.base) > 1e-12 * (1.0 + std::abs(path.base)))
        throw path_error("hyp2f1_transport: initial state must sit at the path base");
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (point_segment_distance(pts[i], pts[i + 1], cplx{0.0, 0.0}) < clearance ||
            point_segment_distance(pts[i], pts[i + 1], cplx{1.0, 0.0}) < clearance)
            throw path_error("hyp2f1_transport: path violates clearance around z = 0 or z = 1");
    }

    const double total_len = path.length();
    detail::ode_state s = {initial.f.real(), initial.f.imag(),
                           initial.df.real(), initial.df.imag()};

    namespace odeint = boost::numeric::odeint;
    auto stepper = odeint::make_controlled(1e-12, 1e-12,
                                           odeint::runge_kutta_dopri5<detail::ode_state>());

    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const cplx a = pts[i], b = pts[i + 1];
        const double seg_len = std::abs(b - a);
        if (seg_len == 0.0) continue;
        const detail::Hyp2f1Rhs rhs{p, a, b - a};
        const double min_dt = 1e-10 * total_len / seg_len;
        double t = 0.0;
        double dt = 0.1;
        std::size_t guard = 0;
        while (t < 1.0) {
            if (t + dt > 1.0) dt = 1.0 - t;
            const auto result = stepper.try_step(rhs, s, t, dt);
            if (result == odeint::fail && dt < min_dt)
                throw convergence_error("hyp2f1_transport: step underflow");
            if (++guard > 2000000)
                throw convergence_error("hyp2f1_transport: step budget exhausted");
        }
    }
    return {pts.back(), cplx{s[0], s[1]}, cplx{s[2], s[3]}};
}

/// Monodromy of the solution space along a closed loop: columns are the
/// transported images of the (value, derivative) basis states at the base.
inline Matrix2c hyp2f1_monodromy(const HyperParams& p, const PathSpec& loop) {
    if (!loop.closed) throw path_error("hyp2f1_monodromy: loop must be closed");
    const HyperState e1 = hyp2f1_transport(p, loop, {loop.base, 1.0, 0.0});
    const HyperState e2 = hyp2f1_transport(p, loop, {loop.base, 0.0, 1.0});
    return {e1.f, e2.f, e1.df, e2.df};
}

} // namespace oscsheet

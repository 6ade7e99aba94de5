#pragma once

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "common.hpp"
#include "errors.hpp"
#include "path.hpp"
#include "specfun.hpp"
#include "surface.hpp"

namespace oscsheet {

/// Branch index of the sixth-root factor of the sextic partition function:
/// sheet k carries the phase e^{i pi k / 3}, period 6.
struct SexticSheet {
    int k{};

    explicit SexticSheet(int k_) : k(((k_ % 6) + 6) % 6) {}
    cplx phase() const { return std::polar(1.0, pi * k / 3.0); }
};

/// External sources coupled to the two fields.
struct SourcePair {
    cplx J{}, K{};
};

/// Moment indices of a Green's function.
struct GreenIndex {
    int alpha{}, beta{};

    GreenIndex(int alpha_, int beta_) : alpha(alpha_), beta(beta_) {
        if (alpha < 0 || beta < 0)
            throw std::invalid_argument("GreenIndex: indices must be nonnegative");
    }
};

/// Reduced fraction, for exact singularity exponents.
struct Rational {
    long num{}, den{1};

    Rational(long n, long d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        const long g = std::gcd(std::labs(n) == 0 ? d : std::labs(n), d);
        num = n / g;
        den = d / g;
    }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

/// Gaussian partition function 2 pi / sqrt(4 v^2 w^2 - g^2); the sign picks
/// one of the two sheets.
inline cplx z_quadratic(const OscillatorPair& osc, cplx g, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("z_quadratic: sign must be +-1");
    const double b = osc.inner_branch_abscissa();
    const cplx radicand = b * b - g * g;
    if (std::abs(radicand) < 1e-14 * b * b)
        throw pole_error("z_quadratic: pole at g = +-2 v w");
    return static_cast<double>(sign) * 2.0 * pi / std::sqrt(radicand);
}

/// Sourced Gaussian partition function.  On top of the square-root sheets,
/// the exponential factor has essential singularities at g = +-2 v w.
inline cplx z_quadratic_sourced(const OscillatorPair& osc, cplx g, const SourcePair& src,
                                int sign) {
    const cplx base = z_quadratic(osc, g, sign);
    const double v2 = osc.nu * osc.nu, w2 = osc.omega * osc.omega;
    const cplx denom = 4.0 * v2 * w2 - g * g;
    return base * std::exp((src.J * src.J * w2 + src.K * src.K * v2 - g * src.K * src.J) / denom);
}

/// Series evaluation of the sextic partition function through the
/// hypergeometric form, valid for |g| <= 1.6.
inline cplx z_sextic_series(cplx g) {
    if (std::abs(g) > 1.6 + 1e-15)
        throw margin_error("z_sextic_series: |g| exceeds the 1.6 series margin");
    const cplx gamma_sixth = gamma_fn(cplx{1.0 / 6.0, 0.0});
    const HyperParams p{cplx{1.0 / 6.0}, cplx{1.0 / 6.0}, cplx{0.5}};
    return gamma_sixth * gamma_sixth / 9.0 * hyp2f1_series(p, g * g / 4.0);
}

/// Connection-formula evaluation around the singular points g = +-2, valid
/// for |1 - g^2/4| <= 0.8.  The sheet phase multiplies the sixth-root factor.
inline cplx z_sextic_connection(cplx g, SexticSheet sheet) {
    const cplx zc = 1.0 - g * g / 4.0;
    if (std::abs(zc) > 0.8 + 1e-15)
        throw margin_error("z_sextic_connection: |1 - g^2/4| exceeds the 0.8 margin");
    const cplx g16 = gamma_fn(cplx{1.0 / 6.0});
    const cplx g13 = gamma_fn(cplx{1.0 / 3.0});
    // Gamma(-1/6) through the reflection identity, keeping ln_gamma on its
    // principal domain.
    const cplx gm16 = pi / (std::sin(-pi / 6.0) * gamma_fn(cplx{7.0 / 6.0}));
    const double sqrt_pi = std::sqrt(pi);

    const cplx first = sqrt_pi * g16 * g16 * g16 / (9.0 * g13 * g13) *
                       hyp2f1_series({cplx{1.0 / 6.0}, cplx{1.0 / 6.0}, cplx{5.0 / 6.0}}, zc);
    const cplx second = std::pow(zc, 1.0 / 6.0) * sheet.phase() * sqrt_pi * gm16 / 9.0 *
                        hyp2f1_series({cplx{1.0 / 3.0}, cplx{1.0 / 3.0}, cplx{7.0 / 6.0}}, zc);
    return first + second;
}

namespace detail {

// Truncation radius keeping the neglected tail of exp(-(1-|g|/2)(x^6+y^6))
// below ~1e-300.
inline double sextic_box_radius(double g) {
    return 4.0 / std::pow(1.0 - 0.5 * std::abs(g), 1.0 / 6.0);
}

// Nested adaptive Gauss-Kronrod quadrature of x^alpha y^beta
// exp(-x^6 - y^6 - g x^3 y^3) over [-R, R]^2.  The joint exponent is
// evaluated inside the inner integrand so no intermediate factor can
// overflow, and interval subdivision resolves the narrow valley the
// integrand develops along x^3 y^3 < 0 as |g| approaches 2.
inline double sextic_moment_quadrature(int alpha, int beta, double g) {
    if (!(std::abs(g) < 2.0))
        throw std::domain_error("sextic quadrature: requires |g| < 2");
    const double r = sextic_box_radius(g);
    using rule = boost::math::quadrature::gauss_kronrod<double, 31>;
    const auto outer = [&](double x) {
        const double x3 = x * x * x;
        const double x6 = x3 * x3;
        const double xa = alpha == 0 ? 1.0 : std::pow(x, alpha);
        const auto inner = [&](double y) {
            const double y3 = y * y * y;
            const double yb = beta == 0 ? 1.0 : std::pow(y, beta);
            return yb * std::exp(-x6 - y3 * y3 - g * x3 * y3);
        };
        return xa * rule::integrate(inner, -r, r, 15, 1e-12);
    };
    return rule::integrate(outer, -r, r, 15, 1e-12);
}

} // namespace detail

/// Direct quadrature of the sextic partition function, |g| < 2.
inline double z_sextic_quadrature(double g) {
    return detail::sextic_moment_quadrature(0, 0, g);
}

/// Exact exponent of the (1 - g^2/4) singular factor of G_{alpha,beta}.
inline Rational singularity_exponent(GreenIndex idx) {
    if ((idx.alpha + idx.beta) % 2 != 0)
        throw parity_error("singularity_exponent: alpha + beta must be even");
    return Rational{1l - idx.alpha - idx.beta, 6l};
}

/// Series for the Green's functions, |g| <= 1.6.  Zero for odd alpha + beta.
/// Even-even indices draw on the even-power moments, odd-odd on the odd
/// powers of the coupling expansion.
inline cplx greens_series(GreenIndex idx, cplx g) {
    if (std::abs(g) > 1.6 + 1e-15)
        throw margin_error("greens_series: |g| exceeds the 1.6 series margin");
    if ((idx.alpha + idx.beta) % 2 != 0) return 0.0;

    const bool even = idx.alpha % 2 == 0;
    const double sa = even ? (idx.alpha + 1.0) / 6.0 : (idx.alpha + 4.0) / 6.0;
    const double sb = even ? (idx.beta + 1.0) / 6.0 : (idx.beta + 4.0) / 6.0;
    const cplx g2 = g * g;

    // even-even: (1/9) sum_m g^{2m}/(2m)!     Gamma(m+sa) Gamma(m+sb)
    // odd-odd:  -(1/9) sum_m g^{2m+1}/(2m+1)! Gamma(m+sa) Gamma(m+sb)
    cplx term = gamma_fn(cplx{sa}) * gamma_fn(cplx{sb}) / 9.0;
    if (!even) term *= -g;
    cplx sum = term;
    for (int m = 0; m < 500; ++m) {
        const double md = static_cast<double>(m);
        const double fact = even ? (2.0 * md + 2.0) * (2.0 * md + 1.0)
                                 : (2.0 * md + 3.0) * (2.0 * md + 2.0);
        term *= g2 * (md + sa) * (md + sb) / fact;
        sum += term;
        if (std::abs(term) <= 1e-16 * std::abs(sum)) return sum;
    }
    throw convergence_error("greens_series: term cap reached before tolerance");
}

/// Direct quadrature of G_{alpha,beta}, |g| < 2.
inline double greens_quadrature(GreenIndex idx, double g) {
    return detail::sextic_moment_quadrature(idx.alpha, idx.beta, g);
}

/// Monodromy of the sextic partition function's solution space along a
/// closed loop in the g-plane: the loop is mapped through z = g^2/4 and a
/// fundamental (value, derivative) pair is transported around the image.
inline Matrix2c sextic_monodromy(const PathSpec& g_loop) {
    if (!g_loop.closed) throw path_error("sextic_monodromy: loop must be closed");
    std::vector<cplx> verts;
    verts.reserve(g_loop.vertices.size());
    for (cplx v : g_loop.vertices) verts.push_back(v * v / 4.0);
    const PathSpec z_loop{g_loop.base * g_loop.base / 4.0, std::move(verts), true};
    const HyperParams p{cplx{1.0 / 6.0}, cplx{1.0 / 6.0}, cplx{0.5}};
    return hyp2f1_monodromy(p, z_loop);
}

/// Sign of the Gaussian partition function after continuing its square root
/// along a closed loop: +1 if the sheet is restored, -1 if it flipped.
inline int z_quadratic_loop_sign(const OscillatorPair& osc, const PathSpec& loop) {
    if (!loop.closed) throw path_error("z_quadratic_loop_sign: loop must be closed");
    const double b = osc.inner_branch_abscissa();
    const auto radicand = [&](cplx g) { return b * b - g * g; };
    const auto pts = loop.polyline();

    const cplx w0 = std::sqrt(radicand(pts.front()));
    if (std::abs(w0) < 1e-8 * b * b)
        throw path_error("z_quadratic_loop_sign: base too close to g = +-2 v w");
    cplx w = w0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        int n = 64;
        for (;;) {
            cplx wt = w;
            bool ok = true;
            for (int k = 1; k <= n; ++k) {
                const cplx g = pts[i] + (pts[i + 1] - pts[i]) * (static_cast<double>(k) / n);
                cplx cand = std::sqrt(radicand(g));
                if (std::abs(-cand - wt) < std::abs(cand - wt)) cand = -cand;
                if (std::abs(cand - wt) > 0.5 * std::abs(wt)) {   // branch choice getting ambiguous
                    ok = false;
                    break;
                }
                wt = cand;
            }
            if (ok) {
                w = wt;
                break;
            }
            n *= 2;
            if (n > (1 << 22))
                throw convergence_error("z_quadratic_loop_sign: refinement exhausted (branch point on path?)");
        }
    }
    return std::abs(w - w0) <= std::abs(w + w0) ? 1 : -1;
}

} // namespace oscsheet

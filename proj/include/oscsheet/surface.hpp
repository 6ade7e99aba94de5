#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "common.hpp"
#include "errors.hpp"

namespace oscsheet {

/// Frequencies of the two oscillators, normalized so that nu > omega.
struct OscillatorPair {
    double nu{};
    double omega{};
    bool swapped{};   // set when the constructor arguments arrived in the other order

    OscillatorPair(double nu_, double omega_) {
        if (!(nu_ > 0.0) || !(omega_ > 0.0))
            throw std::invalid_argument("OscillatorPair: frequencies must be positive");
        if (nu_ == omega_)
            throw std::invalid_argument("OscillatorPair: frequencies must be distinct");
        swapped = nu_ < omega_;
        nu = swapped ? omega_ : nu_;
        omega = swapped ? nu_ : omega_;
    }

    double inner_branch_abscissa() const { return 2.0 * nu * omega; }      // collisions at +-2vw
    double outer_branch_ordinate() const { return nu * nu - omega * omega; } // collisions at +-i(v^2-w^2)
    double freq_sq_sum() const { return nu * nu + omega * omega; }
};

/// Sign pair selecting the branches of the two nested square roots of the
/// energy function.  Sheets 1..4 are (+,+), (-,+), (-,-), (+,-) in
/// (inner, outer) order.
struct SheetId {
    int inner{+1};
    int outer{+1};

    SheetId(int inner_, int outer_) : inner(inner_), outer(outer_) {
        if ((inner != 1 && inner != -1) || (outer != 1 && outer != -1))
            throw std::invalid_argument("SheetId: signs must be +1 or -1");
    }

    static SheetId from_index(int k) {
        switch (k) {
            case 1: return {+1, +1};
            case 2: return {-1, +1};
            case 3: return {-1, -1};
            case 4: return {+1, -1};
        }
        throw std::invalid_argument("SheetId: sheet index must be 1..4");
    }

    int index() const {
        if (outer > 0) return inner > 0 ? 1 : 2;
        return inner < 0 ? 3 : 4;
    }

    bool operator==(const SheetId& o) const { return inner == o.inner && outer == o.outer; }
};

struct BranchPointSet {
    std::array<cplx, 2> inner_points;   // {+2vw, -2vw}, real
    std::array<cplx, 2> outer_points;   // {+i(v^2-w^2), -i(v^2-w^2)}, imaginary

    std::array<cplx, 4> all() const {
        return {inner_points[0], inner_points[1], outer_points[0], outer_points[1]};
    }
};

inline BranchPointSet branch_points(const OscillatorPair& osc) {
    const double b = osc.inner_branch_abscissa();
    const double d = osc.outer_branch_ordinate();
    return {{cplx{b, 0.0}, cplx{-b, 0.0}}, {cplx{0.0, d}, cplx{0.0, -d}}};
}

/// Angular sector of eigenfunction decay in the complex coordinate plane.
struct WedgeDescriptor {
    double center_angle{};
    double opening_angle{};
};

/// Monic even quartic satisfied by the energy: coefficients of E^4, E^2, E^0.
inline std::array<cplx, 3> quartic_coeffs(const OscillatorPair& osc, cplx g) {
    const double d = osc.outer_branch_ordinate();
    return {cplx{1.0}, cplx{-2.0 * osc.freq_sq_sum()}, d * d + g * g};
}

inline cplx quartic_value(const std::array<cplx, 3>& c, cplx e) {
    const cplx e2 = e * e;
    return (e2 + c[1]) * e2 + c[2];
}

inline cplx quartic_derivative(const std::array<cplx, 3>& c, cplx e) {
    return (4.0 * e * e + 2.0 * c[1]) * e;
}

namespace detail {

// Branch of sqrt(4 v^2 w^2 - g^2) that equals +2vw at g = 0, with its two
// cuts running vertically from the branch points +-2vw: downward when
// cuts_down is set, upward otherwise.  Factoring the radicand as
// (2vw - g)(2vw + g) puts each cut under the control of one factor.
inline cplx inner_root(const OscillatorPair& osc, cplx g, bool cuts_down) {
    const double b = osc.inner_branch_abscissa();
    const cplx u1 = b - g;   // vanishes at g = +2vw; its cut angle steers that cut
    const cplx u2 = b + g;   // vanishes at g = -2vw
    if (cuts_down) return sqrt_cut(u1, 0.5 * pi) * sqrt_cut(u2, -0.5 * pi);
    return sqrt_cut(u1, -0.5 * pi) * sqrt_cut(u2, 0.5 * pi);
}

} // namespace detail

/// Sheet-indexed evaluation of the four-valued energy.
///
/// Cut conventions (one valid choice; continuation along paths, not the cut
/// geometry, carries the sheet semantics):
///   - Sheets 1 and 2: inner cuts run downward from +-2vw.
///   - Sheets 3 and 4: inner cuts run upward from +-2vw.
///   - Sheets 2 and 3: the outer cut falls on the imaginary axis outward
///     from +-i(v^2 - w^2); this is where the outer radicand is negative
///     real, so the principal outer square root places it there on its own.
/// Adjacency: 1<->2 and 3<->4 across the inner cuts, 2<->3 across the outer
/// ones.  Sheets 1 and 4 never see the outer branch points (on them the
/// outer radicand is bounded away from zero).
///
/// Exact branch-point hits are allowed (the limit value exists there); points
/// closer than 1e-12*vw to a branch point, but not on it, are rejected as
/// numerically unresolvable.
inline cplx eval_sheet(const OscillatorPair& osc, cplx g, SheetId sheet) {
    const double tol = 1e-12 * osc.nu * osc.omega;
    const BranchPointSet bp = branch_points(osc);
    for (cplx p : bp.inner_points) {
        const double dist = std::abs(g - p);
        if (dist != 0.0 && dist < tol)
            throw branch_point_error("eval_sheet: coupling unresolvably close to an inner branch point");
    }
    if (sheet.inner < 0) {
        for (cplx p : bp.outer_points) {
            const double dist = std::abs(g - p);
            if (dist != 0.0 && dist < tol)
                throw branch_point_error("eval_sheet: coupling unresolvably close to an outer branch point");
        }
    }
    const cplx w = detail::inner_root(osc, g, /*cuts_down=*/sheet.outer > 0);
    const cplx radicand = osc.freq_sq_sum() + static_cast<double>(sheet.inner) * w;
    return static_cast<double>(sheet.outer) * std::sqrt(radicand);
}

/// All four sheet values at one coupling, indexed by sheet number - 1.
inline std::array<cplx, 4> sheet_values(const OscillatorPair& osc, cplx g) {
    std::array<cplx, 4> out;
    for (int k = 1; k <= 4; ++k) out[k - 1] = eval_sheet(osc, g, SheetId::from_index(k));
    return out;
}

/// Decoupled-limit energies {v+w, v-w, -v+w, -v-w}, indexed by sheet number - 1.
inline std::array<double, 4> sheet_values_at_zero(const OscillatorPair& osc) {
    return {osc.nu + osc.omega, osc.nu - osc.omega, -osc.nu + osc.omega, -osc.nu - osc.omega};
}

/// n-th level of a single oscillator of (possibly complex) frequency nu.
/// Rotating nu through a half turn negates every level.
inline cplx single_oscillator_energy(cplx nu, int n) {
    if (n < 0) throw std::invalid_argument("single_oscillator_energy: n must be nonnegative");
    return (2.0 * n + 1.0) * nu;
}

/// The pair of decay wedges of the oscillator eigenfunctions.  Both have
/// opening pi/2 and rotate clockwise at half the rate of nu's phase.
inline std::array<WedgeDescriptor, 2> stokes_wedges(double arg_nu) {
    return {WedgeDescriptor{-0.5 * arg_nu, 0.5 * pi},
            WedgeDescriptor{pi - 0.5 * arg_nu, 0.5 * pi}};
}

} // namespace oscsheet

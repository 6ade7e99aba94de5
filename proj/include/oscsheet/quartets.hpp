#pragma once

#include <array>
#include <cmath>

#include "common.hpp"
#include "errors.hpp"
#include "surface.hpp"

namespace oscsheet {

/// Exponent parameters of the ground-state factor exp(-a x^2/2 - b y^2/2 + c xy).
struct GaussianAnsatz {
    cplx a{}, b{}, c{};
};

/// Coefficients of the polynomial factor P(x, y) = A x + B y + C xy + D.
struct QuartetCoeffs {
    cplx A{}, B{}, C{}, D{};
};

/// Quartet label (m, n), each 0 or 1.
struct QuartetLabel {
    int m{}, n{};

    QuartetLabel(int m_, int n_) : m(m_), n(n_) {
        if ((m != 0 && m != 1) || (n != 0 && n != 1))
            throw std::invalid_argument("QuartetLabel: m and n must be 0 or 1");
    }
    bool operator==(const QuartetLabel& o) const { return m == o.m && n == o.n; }
};

/// Decoupling-limit polynomial factor of quartet (m, n): 1, x, y or xy.
inline QuartetCoeffs quartet_polynomial(QuartetLabel q) {
    QuartetCoeffs p;
    if (q.m == 0 && q.n == 0) p.D = 1.0;
    else if (q.m == 1 && q.n == 0) p.A = 1.0;
    else if (q.m == 0 && q.n == 1) p.B = 1.0;
    else p.C = 1.0;
    return p;
}

/// Inverts the ground-state relations for (a, b, c) given a branch energy E:
/// a + b = E, a - b = (v^2 - w^2)/E, c = -g/(2E).  E = 0 happens only at the
/// outer branch points, where the inversion degenerates.
inline GaussianAnsatz recover_ansatz(const OscillatorPair& osc, cplx g, cplx E) {
    const double d = osc.outer_branch_ordinate();
    if (std::abs(E) < 1e-12 * (osc.nu + osc.omega))
        throw branch_point_error("recover_ansatz: E vanishes (outer branch point)");
    const cplx diff = d / E;
    return {0.5 * (E + diff), 0.5 * (E - diff), -g / (2.0 * E)};
}

/// The four quartet energies at one coupling on one sheet, labels continued
/// from the decoupled limit.
struct QuartetEnergies {
    cplx e00{}, e01{}, e10{}, e11{};

    cplx at(QuartetLabel q) const {
        if (q.m == 0 && q.n == 0) return e00;
        if (q.m == 0 && q.n == 1) return e01;
        if (q.m == 1 && q.n == 0) return e10;
        return e11;
    }

    // The (1,0)/(0,1) labels away from g = 0 are a convention, not a paper
    // statement; downstream output should carry this note.
    static constexpr const char* labeling_note =
        "labels of (1,0) and (0,1) are continued from g = 0 along the straight segment to g";
};

namespace detail {

// Splitting s = sqrt((a-b)^2 + 4c^2) of the (1,0)/(0,1) pair, continued in t
// along g(t) = t g from s(0) = a - b.  Algebraically s^2 reduces to
// ((v^2-w^2)^2 + g^2)/E^2, which vanishes only at the outer branch points.
inline cplx track_splitting(const OscillatorPair& osc, cplx g, SheetId sheet) {
    const double d = osc.outer_branch_ordinate();
    const cplx e_zero = eval_sheet(osc, cplx{0.0, 0.0}, sheet);
    cplx s_prev = d / e_zero;   // a - b at the decoupled limit
    if (g == cplx{0.0, 0.0}) return s_prev;

    const int steps = 512;
    for (int k = 1; k <= steps; ++k) {
        const cplx gt = g * (static_cast<double>(k) / steps);
        const cplx e = eval_sheet(osc, gt, sheet);
        if (std::abs(e) < 1e-12 * (osc.nu + osc.omega))
            throw tracking_error("quartet labels: splitting collapses at an outer branch point");
        const cplx r = std::sqrt((d * d + gt * gt)) / e;
        const cplx s = (std::abs(r - s_prev) <= std::abs(-r - s_prev)) ? r : -r;
        if (std::abs(s - s_prev) > 0.8 * std::abs(s_prev) + 1e-6 * (1.0 + std::abs(d)))
            throw tracking_error("quartet labels: continuity tracking lost between steps");
        s_prev = s;
    }
    return s_prev;
}

} // namespace detail

/// Quartet energies on a sheet: (0,0) is the branch energy E0, (1,1) is 3 E0,
/// and (1,0)/(0,1) are 2 E0 +- s with s the tracked level splitting.
inline QuartetEnergies quartet_energies(const OscillatorPair& osc, cplx g, SheetId sheet) {
    const cplx e0 = eval_sheet(osc, g, sheet);
    (void)recover_ansatz(osc, g, e0);   // enforces E != 0 up front
    const cplx s = detail::track_splitting(osc, g, sheet);
    return {e0, 2.0 * e0 - s, 2.0 * e0 + s, 3.0 * e0};
}

/// The 16 decoupled energies +-(2m+1)v +-(2n+1)w.  Rows are the quartets in
/// order (0,0), (0,1), (1,0), (1,1); columns are sheets 1..4.
inline std::array<std::array<double, 4>, 4> fig5_table(const OscillatorPair& osc) {
    const auto row = [&](int m, int n) -> std::array<double, 4> {
        const double x = (2.0 * m + 1.0) * osc.nu;
        const double y = (2.0 * n + 1.0) * osc.omega;
        return {x + y, x - y, -x + y, -x - y};
    };
    return {row(0, 0), row(0, 1), row(1, 0), row(1, 1)};
}

} // namespace oscsheet

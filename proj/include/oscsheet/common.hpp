#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace oscsheet {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

namespace detail {

// Branch of sqrt(w) whose cut runs along the ray arg(w) == cut_angle,
// normalized to be positive on the positive real axis.  cut_angle must lie
// in (-pi, pi] and must not be 0 (a cut through the normalization ray would
// make the normalization meaningless).
inline cplx sqrt_cut(cplx w, double cut_angle) {
    double t = std::arg(w);
    if (cut_angle > 0.0) {
        if (t > cut_angle) t -= 2.0 * pi;   // continuous on (cut_angle - 2pi, cut_angle]
    } else {
        if (t < cut_angle) t += 2.0 * pi;   // continuous on [cut_angle, cut_angle + 2pi)
    }
    return std::polar(std::sqrt(std::abs(w)), 0.5 * t);
}

inline bool rel_close(cplx a, cplx b, double tol) {
    return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

} // namespace detail

// Minimal 2x2 complex matrix; enough for monodromy bookkeeping.
struct Matrix2c {
    cplx m00{1.0}, m01{0.0}, m10{0.0}, m11{1.0};

    static Matrix2c identity() { return {}; }

    Matrix2c operator*(const Matrix2c& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }

    std::array<cplx, 2> eigenvalues() const {
        const cplx tr = m00 + m11;
        const cplx det = m00 * m11 - m01 * m10;
        const cplx disc = std::sqrt(tr * tr - 4.0 * det);
        return {0.5 * (tr + disc), 0.5 * (tr - disc)};
    }

    double distance_to_identity() const {
        return std::max(std::max(std::abs(m00 - 1.0), std::abs(m11 - 1.0)),
                        std::max(std::abs(m01), std::abs(m10)));
    }

    Matrix2c pow(int n) const {
        Matrix2c r = identity();
        for (int i = 0; i < n; ++i) r = r * (*this);
        return r;
    }
};

} // namespace oscsheet

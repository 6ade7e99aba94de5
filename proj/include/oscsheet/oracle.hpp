#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "surface.hpp"

namespace oscsheet {

/// Product-basis truncation: n_max quanta per mode, dimension (n_max+1)^2.
struct FockTruncation {
    int n_max{};

    explicit FockTruncation(int n_max_) : n_max(n_max_) {
        if (n_max < 1) throw std::invalid_argument("FockTruncation: n_max must be >= 1");
    }
    int dimension() const { return (n_max + 1) * (n_max + 1); }
};

struct SpectrumSlice {
    std::vector<double> eigenvalues;        // ascending
    int n_max{};
    std::vector<double> truncation_error;   // |level(n_max) - level(n_max - 4)| per level
};

/// Matrix of p^2 + v^2 x^2 + q^2 + w^2 y^2 + g xy in the uncoupled product
/// eigenbasis.  Diagonal (2i+1)v + (2j+1)w; the coupling connects
/// |i,j> to |i+-1,j+-1> through the position matrix elements
/// x_{i,i+1} = sqrt(i+1)/sqrt(2v) and likewise for y.
inline Eigen::MatrixXd build_hamiltonian(const OscillatorPair& osc, double g,
                                         const FockTruncation& trunc) {
    if (!(std::abs(g) < osc.inner_branch_abscissa()))
        throw std::domain_error("build_hamiltonian: requires |g| < 2 v w (discrete-spectrum window)");
    const int n = trunc.n_max + 1;
    const int dim = n * n;
    const auto idx = [n](int i, int j) { return i * n + j; };

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            h(idx(i, j), idx(i, j)) = (2.0 * i + 1.0) * osc.nu + (2.0 * j + 1.0) * osc.omega;

    std::vector<double> xv(n - 1), yv(n - 1);
    for (int i = 0; i + 1 < n; ++i) {
        xv[i] = std::sqrt(i + 1.0) / std::sqrt(2.0 * osc.nu);
        yv[i] = std::sqrt(i + 1.0) / std::sqrt(2.0 * osc.omega);
    }
    for (int i = 0; i + 1 < n; ++i) {
        for (int j = 0; j + 1 < n; ++j) {
            const double v = g * xv[i] * yv[j];
            h(idx(i, j), idx(i + 1, j + 1)) = v;
            h(idx(i + 1, j + 1), idx(i, j)) = v;
            h(idx(i, j + 1), idx(i + 1, j)) = v;
            h(idx(i + 1, j), idx(i, j + 1)) = v;
        }
    }
    return h;
}

namespace detail {

inline std::vector<double> lowest_eigenvalues(const Eigen::MatrixXd& h, int k) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("lowest_eigenvalues: eigensolver failed");
    std::vector<double> out(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    return out;
}

} // namespace detail

/// k smallest eigenvalues at the given truncation, with a per-level
/// truncation-error estimate from the n_max - 4 run.
inline SpectrumSlice lowest_energies(const OscillatorPair& osc, double g,
                                     const FockTruncation& trunc, int k) {
    if (k < 1 || k > trunc.dimension())
        throw std::invalid_argument("lowest_energies: k must be in [1, dimension]");
    SpectrumSlice slice;
    slice.n_max = trunc.n_max;
    slice.eigenvalues = detail::lowest_eigenvalues(build_hamiltonian(osc, g, trunc), k);
    slice.truncation_error.assign(slice.eigenvalues.size(), 0.0);
    if (trunc.n_max - 4 >= 1) {
        const FockTruncation smaller{trunc.n_max - 4};
        const int k_small = std::min(k, smaller.dimension());
        const auto ref = detail::lowest_eigenvalues(build_hamiltonian(osc, g, smaller), k_small);
        for (int i = 0; i < k_small; ++i)
            slice.truncation_error[static_cast<std::size_t>(i)] =
                std::abs(slice.eigenvalues[static_cast<std::size_t>(i)] - ref[static_cast<std::size_t>(i)]);
    }
    return slice;
}

/// Classical normal-mode frequencies (Omega+, Omega-):
/// Omega+-^2 = (v^2 + w^2)/2 +- sqrt((v^2 - w^2)^2/4 + g^2/4).
/// The ground energy of the coupled system is Omega+ + Omega-.
inline std::pair<double, double> normal_mode_energies(const OscillatorPair& osc, double g) {
    if (!(std::abs(g) < osc.inner_branch_abscissa()))
        throw std::domain_error("normal_mode_energies: requires |g| < 2 v w");
    const double mean = 0.5 * osc.freq_sq_sum();
    const double split = std::sqrt(0.25 * osc.outer_branch_ordinate() * osc.outer_branch_ordinate() +
                                   0.25 * g * g);
    return {std::sqrt(mean + split), std::sqrt(mean - split)};
}

} // namespace oscsheet

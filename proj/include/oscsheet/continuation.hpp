#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "common.hpp"
#include "errors.hpp"
#include "path.hpp"
#include "surface.hpp"

namespace oscsheet {

struct RootTrackSample {
    double s{};                    // arc length from the base point
    cplx g{};
    std::array<cplx, 4> roots{};   // one entry per sheet label
};

/// Labeled trajectories of the four quartic roots along a path.  Label k
/// (0-based) is the root that coincided with eval_sheet on sheet k+1 at the
/// base point.
struct RootTrack {
    std::vector<RootTrackSample> samples;

    const RootTrackSample& front() const { return samples.front(); }
    const RootTrackSample& back() const { return samples.back(); }
};

inline double collision_radius(const OscillatorPair& osc) {
    return 1e-3 * std::max(osc.inner_branch_abscissa(), osc.outer_branch_ordinate());
}

/// Rejects paths that approach a branch point closer than the collision
/// radius anywhere along any segment.
inline void validate_path(const OscillatorPair& osc, const PathSpec& path) {
    const double r = collision_radius(osc);
    for (cplx p : branch_points(osc).all()) {
        if (path_clearance(path, p) < r)
            throw path_error("path passes within the collision radius of a branch point");
    }
}

namespace detail {

inline double min_pairwise_separation(const std::array<cplx, 4>& roots) {
    double best = std::abs(roots[0] - roots[1]);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) best = std::min(best, std::abs(roots[i] - roots[j]));
    return best;
}

struct PolishResult {
    cplx root{};
    bool converged{};
};

// Newton polish on the monic even quartic, at most 8 iterations to a
// residual of 1e-13 relative to 1 + |E|^4.
inline PolishResult polish_root(const std::array<cplx, 3>& coeffs, cplx e) {
    for (int it = 0; it < 8; ++it) {
        const cplx f = quartic_value(coeffs, e);
        const double scale = 1.0 + std::norm(e * e);
        if (std::abs(f) <= 1e-13 * scale) return {e, true};
        const cplx fp = quartic_derivative(coeffs, e);
        if (std::abs(fp) < 1e-300) return {e, false};
        e -= f / fp;
    }
    const double scale = 1.0 + std::norm(e * e);
    return {e, std::abs(quartic_value(coeffs, e)) <= 1e-13 * scale};
}

} // namespace detail

/// Predictor-corrector continuation of the four labeled roots along a path.
/// Steps start at 1/64 of each segment, halve whenever a root moves more
/// than half the previous minimal pairwise separation (the no-swap guard) or
/// the correction comes within a quarter of the new separation, and double
/// after four clean steps.  Underflow of the step signals a root collision.
inline RootTrack track_roots(const OscillatorPair& osc, const PathSpec& path) {
    validate_path(osc, path);
    const auto pts = path.polyline();

    RootTrack track;
    std::array<cplx, 4> cur = sheet_values(osc, path.base);
    if (detail::min_pairwise_separation(cur) <= 0.0)
        throw path_error("track_roots: base point does not separate the four roots");
    double s_cum = 0.0;
    track.samples.push_back({0.0, path.base, cur});

    std::array<cplx, 4> slope{};   // last accepted per-arclength motion, for prediction
    bool have_slope = false;

    for (std::size_t seg = 0; seg + 1 < pts.size(); ++seg) {
        const cplx a = pts[seg], b = pts[seg + 1];
        const double len = std::abs(b - a);
        if (len == 0.0) continue;
        double h = len / 64.0;
        double pos = 0.0;
        int clean = 0;
        while (pos < len * (1.0 - 1e-15)) {
            const bool last = h >= len - pos;
            const double hh = last ? len - pos : h;
            const cplx gn = last ? b : a + (b - a) * ((pos + hh) / len);
            const auto coeffs = quartic_coeffs(osc, gn);

            std::array<cplx, 4> next{};
            bool converged = true;
            double max_corr = 0.0, max_move = 0.0;
            for (int i = 0; i < 4; ++i) {
                const cplx pred = have_slope ? cur[i] + slope[i] * hh : cur[i];
                const auto polished = detail::polish_root(coeffs, pred);
                converged = converged && polished.converged;
                next[i] = polished.root;
                max_corr = std::max(max_corr, std::abs(next[i] - pred));
                max_move = std::max(max_move, std::abs(next[i] - cur[i]));
            }
            const double sep_prev = detail::min_pairwise_separation(cur);
            const double sep_next = detail::min_pairwise_separation(next);
            const bool accept = converged && max_move < 0.5 * sep_prev && 4.0 * max_corr < sep_next;

            if (accept) {
                for (int i = 0; i < 4; ++i) slope[i] = (next[i] - cur[i]) / hh;
                have_slope = true;
                cur = next;
                pos = last ? len : pos + hh;
                s_cum += hh;
                track.samples.push_back({s_cum, gn, cur});
                if (++clean >= 4) {
                    h = std::min(2.0 * h, len / 8.0);
                    clean = 0;
                }
            } else {
                h *= 0.5;
                clean = 0;
                have_slope = false;   // a stale slope is what misled the predictor
                if (h < 1e-9 * len) {
                    if (converged)
                        throw collision_error("track_roots: step underflow near a root collision");
                    throw convergence_error("track_roots: corrector failed to converge");
                }
            }
        }
    }
    return track;
}

/// Bijection on the four sheet labels induced by a closed loop.
struct MonodromyPermutation {
    std::array<int, 4> to{0, 1, 2, 3};   // label i ends on the branch of label to[i]

    bool is_identity() const { return to == std::array<int, 4>{0, 1, 2, 3}; }

    MonodromyPermutation inverse() const {
        MonodromyPermutation inv;
        for (int i = 0; i < 4; ++i) inv.to[to[i]] = i;
        return inv;
    }

    /// first, then second (i.e. (second o first)(i) = second[first[i]]).
    static MonodromyPermutation compose(const MonodromyPermutation& second,
                                        const MonodromyPermutation& first) {
        MonodromyPermutation out;
        for (int i = 0; i < 4; ++i) out.to[i] = second.to[first.to[i]];
        return out;
    }

    bool operator==(const MonodromyPermutation& o) const { return to == o.to; }

    /// Cycle notation with 1-based sheet numbers; "()" for the identity.
    std::string cycles() const {
        std::string out;
        std::array<bool, 4> seen{};
        for (int i = 0; i < 4; ++i) {
            if (seen[i] || to[i] == i) continue;
            out += '(';
            int j = i;
            bool first = true;
            while (!seen[j]) {
                seen[j] = true;
                if (!first) out += ' ';
                out += std::to_string(j + 1);
                first = false;
                j = to[j];
            }
            out += ')';
        }
        if (out.empty()) out = "()";
        return out;
    }
};

/// Tracks the four roots around a closed loop and matches the endpoints
/// against the base values (relative tolerance match_tol).
inline MonodromyPermutation monodromy(const OscillatorPair& osc, const PathSpec& loop,
                                      double match_tol = 1e-8) {
    if (!loop.closed) throw path_error("monodromy: path must be closed");
    const RootTrack track = track_roots(osc, loop);
    const auto& start = track.front().roots;
    const auto& fin = track.back().roots;

    MonodromyPermutation perm;
    std::array<bool, 4> used{};
    for (int i = 0; i < 4; ++i) {
        int best = -1;
        double best_dist = 0.0;
        for (int j = 0; j < 4; ++j) {
            const double dist = std::abs(fin[i] - start[j]);
            if (best < 0 || dist < best_dist) {
                best = j;
                best_dist = dist;
            }
        }
        if (used[best] || best_dist > match_tol * (1.0 + std::abs(start[best])))
            throw tracking_error("monodromy: endpoints do not match a permutation of the base roots");
        used[best] = true;
        perm.to[i] = best;
    }
    return perm;
}

/// One leg of the tour: a closed loop from g = 0 crossing one cut pair.
struct TourLeg {
    std::string description;
    PathSpec loop;
    int sheet_after{};     // 1..4
    cplx energy_at_zero{}; // tracked value of the current branch back at g = 0
};

struct GrandTourReport {
    double energy_start{};
    std::vector<TourLeg> legs;

    double net_change() const {
        return legs.back().energy_at_zero.real() - energy_start;
    }
};

/// The three fixed loops of the tour, all based at g = 0:
///   1. a box around +2vw of half-size min(2vw, v^2-w^2)/2 (inner cut crossing),
///   2. a box around +i(v^2-w^2) of the same half-size (outer cut crossing),
///   3. the first box again.
inline std::array<PathSpec, 3> grand_tour_legs(const OscillatorPair& osc) {
    const double bi = osc.inner_branch_abscissa();
    const double bo = osc.outer_branch_ordinate();
    const double h = 0.5 * std::min(bi, bo);
    const cplx i{0.0, 1.0};

    const PathSpec inner_box{0.0,
                             {bi - h, bi - h - i * h, bi + h - i * h, bi + h + i * h,
                              bi - h + i * h, bi - h},
                             true};
    const PathSpec outer_box{0.0,
                             {h, h + i * (bo - h), h + i * (bo + h), -h + i * (bo + h),
                              -h + i * (bo - h), h + i * (bo - h), h},
                             true};
    return {inner_box, outer_box, inner_box};
}

/// Runs the three legs in order, reporting the sheet and the revisited
/// decoupled energy after each one.
inline GrandTourReport grand_tour(const OscillatorPair& osc) {
    const auto legs = grand_tour_legs(osc);
    const std::array<std::string, 3> names = {
        "cross the cut below +2vw (loop around the inner branch point)",
        "cross the cut above +i(v^2-w^2) (loop around the outer branch point)",
        "cross the cut at +2vw again (loop around the inner branch point)"};

    GrandTourReport report;
    report.energy_start = osc.nu + osc.omega;
    int current = 0;   // label of sheet 1
    for (int leg = 0; leg < 3; ++leg) {
        const RootTrack track = track_roots(osc, legs[leg]);
        const auto& start = track.front().roots;
        const auto& fin = track.back().roots;
        MonodromyPermutation perm;
        {
            std::array<bool, 4> used{};
            for (int idx = 0; idx < 4; ++idx) {
                int best = -1;
                double best_dist = 0.0;
                for (int j = 0; j < 4; ++j) {
                    const double dist = std::abs(fin[idx] - start[j]);
                    if (best < 0 || dist < best_dist) {
                        best = j;
                        best_dist = dist;
                    }
                }
                if (used[best] || best_dist > 1e-8 * (1.0 + std::abs(start[best])))
                    throw tracking_error("grand_tour: leg endpoints do not permute the base roots");
                used[best] = true;
                perm.to[idx] = best;
            }
        }
        const cplx revisited = fin[current];
        current = perm.to[current];
        report.legs.push_back({names[leg], legs[leg], current + 1, revisited});
    }
    return report;
}

} // namespace oscsheet

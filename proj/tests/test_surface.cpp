#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oscsheet/surface.hpp"
#include "testutil.hpp"

using oscsheet::cplx;
using oscsheet::OscillatorPair;
using oscsheet::SheetId;
using testutil::rel_err;

namespace {
const OscillatorPair osc21{2.0, 1.0};
}

TEST_CASE("OscillatorPair normalization and invariants") {
    CHECK_THROWS_AS((OscillatorPair{1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS((OscillatorPair{-1.0, 2.0}), std::invalid_argument);
    const OscillatorPair flipped{1.0, 2.0};
    CHECK(flipped.nu == 2.0);
    CHECK(flipped.omega == 1.0);
    CHECK(flipped.swapped);
    CHECK(!osc21.swapped);
}

TEST_CASE("quartic coefficients") {
    const auto c0 = oscsheet::quartic_coeffs(osc21, cplx{0.0});
    CHECK(c0[0] == cplx{1.0});
    CHECK(c0[1] == cplx{-10.0});
    CHECK(c0[2] == cplx{9.0});
    const auto c4 = oscsheet::quartic_coeffs(osc21, cplx{4.0});
    CHECK(c4[2] == cplx{25.0});

    // roots of the decoupled quartic are +-nu +- omega
    for (double root : {3.0, 1.0, -1.0, -3.0})
        CHECK(std::abs(oscsheet::quartic_value(c0, cplx{root})) < 1e-12);
}

TEST_CASE("sheet values at zero coupling") {
    CHECK(oscsheet::eval_sheet(osc21, cplx{0.0}, SheetId::from_index(1)) == cplx{3.0});
    CHECK(oscsheet::eval_sheet(osc21, cplx{0.0}, SheetId::from_index(2)) == cplx{1.0});
    CHECK(oscsheet::eval_sheet(osc21, cplx{0.0}, SheetId::from_index(3)) == cplx{-1.0});
    CHECK(oscsheet::eval_sheet(osc21, cplx{0.0}, SheetId::from_index(4)) == cplx{-3.0});

    const auto zeros = oscsheet::sheet_values_at_zero(osc21);
    CHECK(zeros == std::array<double, 4>{3.0, 1.0, -1.0, -3.0});
    CHECK(zeros[0] + zeros[1] + zeros[2] + zeros[3] == 0.0);
    CHECK(zeros[0] * zeros[1] * zeros[2] * zeros[3] == 9.0);
}

TEST_CASE("evaluation at and near the inner branch point") {
    // exactly at g = 2 nu omega the inner root vanishes and E = sqrt(nu^2 + omega^2)
    const cplx at_bp = oscsheet::eval_sheet(osc21, cplx{4.0}, SheetId::from_index(1));
    CHECK(rel_err(at_bp, std::sqrt(5.0)) < 1e-14);
    // unresolvably close (but not exact) is rejected
    CHECK_THROWS_AS(oscsheet::eval_sheet(osc21, cplx{4.0 + 1e-14}, SheetId::from_index(1)),
                    oscsheet::branch_point_error);
    // outer proximity only matters on the sheets with negative inner sign
    CHECK_NOTHROW(oscsheet::eval_sheet(osc21, cplx{0.0, 3.0 + 1e-14}, SheetId::from_index(1)));
    CHECK_THROWS_AS(oscsheet::eval_sheet(osc21, cplx{0.0, 3.0 + 1e-14}, SheetId::from_index(2)),
                    oscsheet::branch_point_error);
}

TEST_CASE("branch point locations") {
    const auto bp = oscsheet::branch_points(osc21);
    CHECK(bp.inner_points[0] == cplx{4.0, 0.0});
    CHECK(bp.inner_points[1] == cplx{-4.0, 0.0});
    CHECK(bp.outer_points[0] == cplx{0.0, 3.0});
    CHECK(bp.outer_points[1] == cplx{0.0, -3.0});

    const auto bp2 = oscsheet::branch_points(OscillatorPair{1.0, 0.5});
    CHECK(bp2.inner_points[0] == cplx{1.0, 0.0});
    CHECK(bp2.outer_points[0] == cplx{0.0, 0.75});
}

TEST_CASE("quartic residual across all sheets") {
    testutil::Rng rng(5150);
    const double radius = 6.0 * osc21.nu * osc21.omega;
    int accepted = 0;
    while (accepted < 1000) {
        const cplx g = rng.in_disk(radius);
        bool near_bp = false;
        for (cplx p : oscsheet::branch_points(osc21).all())
            near_bp = near_bp || std::abs(g - p) < 1e-6;
        if (near_bp) continue;
        const auto coeffs = oscsheet::quartic_coeffs(osc21, g);
        for (int k = 1; k <= 4; ++k) {
            const cplx e = oscsheet::eval_sheet(osc21, g, SheetId::from_index(k));
            const double scale = 1.0 + std::norm(e * e);
            CHECK(std::abs(oscsheet::quartic_value(coeffs, e)) <= 1e-10 * scale);
        }
        ++accepted;
    }
}

TEST_CASE("evenness inside the strip, inner-sign flip outside") {
    testutil::Rng rng(31337);
    const double bi = osc21.inner_branch_abscissa();
    for (int trial = 0; trial < 400; ++trial) {
        const cplx g = rng.in_disk(10.0);
        bool near_bp = false;
        for (cplx p : oscsheet::branch_points(osc21).all()) {
            near_bp = near_bp || std::abs(g - p) < 1e-3 || std::abs(g + p) < 1e-3;
        }
        if (near_bp || std::abs(std::abs(g.real()) - bi) < 1e-3) continue;
        for (int k = 1; k <= 4; ++k) {
            const SheetId sheet = SheetId::from_index(k);
            const cplx here = oscsheet::eval_sheet(osc21, g, sheet);
            const cplx there = oscsheet::eval_sheet(osc21, -g, sheet);
            if (std::abs(g.real()) < bi) {
                CHECK(std::abs(here - there) < 1e-12 * (1.0 + std::abs(here)));
            } else {
                // beyond the inner branch points, negation crosses the cut
                // geometry and lands on the sheet with flipped inner sign
                const cplx flipped =
                    oscsheet::eval_sheet(osc21, g, SheetId{-sheet.inner, sheet.outer});
                CHECK(std::abs(flipped - there) < 1e-12 * (1.0 + std::abs(flipped)));
            }
        }
        // the root multiset itself is even in g everywhere
        auto at_g = oscsheet::sheet_values(osc21, g);
        auto at_mg = oscsheet::sheet_values(osc21, -g);
        for (cplx root : at_g) {
            double best = 1e300;
            for (cplx other : at_mg) best = std::min(best, std::abs(root - other));
            CHECK(best < 1e-10 * (1.0 + std::abs(root)));
        }
    }
}

TEST_CASE("outer sign fixes the half plane of the result") {
    testutil::Rng rng(777);
    for (int trial = 0; trial < 300; ++trial) {
        const cplx g = rng.in_disk(8.0);
        for (int k = 1; k <= 4; ++k) {
            const SheetId sheet = SheetId::from_index(k);
            cplx e;
            try {
                e = oscsheet::eval_sheet(osc21, g, sheet);
            } catch (const oscsheet::branch_point_error&) {
                continue;
            }
            const cplx radicand = e * e;   // = freq_sq_sum + inner * w by construction
            // principal square root lands in Re >= 0; the outer sign scales it
            if (radicand.real() < 0.0 && std::abs(radicand.imag()) < 1e-9) continue;
            CHECK(static_cast<double>(sheet.outer) * e.real() >= 0.0);
        }
    }
}

TEST_CASE("sheet 1 outer radicand never vanishes") {
    // the sign-flip locus of the outer root is spurious on sheet 1
    testutil::Rng rng(424242);
    const double floor = 1e-6;
    for (int trial = 0; trial < 2000; ++trial) {
        const cplx g = rng.in_disk(12.0);
        const cplx w = oscsheet::detail::inner_root(osc21, g, /*cuts_down=*/true);
        CHECK(std::abs(osc21.freq_sq_sum() + w) > floor);
    }
}

TEST_CASE("single oscillator phase rotation") {
    CHECK(oscsheet::single_oscillator_energy(cplx{1.0}, 0) == cplx{1.0});
    const cplx rotated = oscsheet::single_oscillator_energy(std::polar(1.0, oscsheet::pi), 2);
    CHECK(std::abs(rotated - cplx{-5.0}) < 1e-14);
    CHECK(std::abs(oscsheet::single_oscillator_energy(cplx{0.0, 1.0}, 0) - cplx{0.0, 1.0}) == 0.0);
    CHECK_THROWS_AS(oscsheet::single_oscillator_energy(cplx{1.0}, -1), std::invalid_argument);
}

TEST_CASE("stokes wedges") {
    const auto at_zero = oscsheet::stokes_wedges(0.0);
    CHECK(at_zero[0].center_angle == 0.0);
    CHECK(at_zero[1].center_angle == oscsheet::pi);
    CHECK(at_zero[0].opening_angle == oscsheet::pi / 2.0);

    const auto at_pi = oscsheet::stokes_wedges(oscsheet::pi);
    CHECK(at_pi[0].center_angle == -oscsheet::pi / 2.0);
    CHECK(at_pi[1].center_angle == oscsheet::pi / 2.0);

    const auto at_half = oscsheet::stokes_wedges(oscsheet::pi / 2.0);
    CHECK(at_half[0].center_angle == -oscsheet::pi / 4.0);
    CHECK(at_half[1].center_angle == 3.0 * oscsheet::pi / 4.0);

    // rotation is linear with slope -1/2
    for (double arg : {0.1, 0.5, 1.2, 2.9}) {
        const auto w = oscsheet::stokes_wedges(arg);
        CHECK(w[0].center_angle - at_zero[0].center_angle == -0.5 * arg);
    }
}

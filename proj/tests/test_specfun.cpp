#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "oscsheet/specfun.hpp"
#include "testutil.hpp"

using oscsheet::cplx;
using oscsheet::HyperParams;
using oscsheet::HyperState;
using oscsheet::Matrix2c;
using oscsheet::PathSpec;
using testutil::rel_err;

namespace {

// Principal-branch reference values, frozen from a 30-digit computation.
struct LogGammaRef {
    cplx z;
    cplx value;
};

const std::vector<LogGammaRef> log_gamma_refs = {
    {{1.0 / 6.0, 0.0}, {1.7167334350782404605, 0.0}},
    {{0.5, 0.0}, {0.57236494292470008707, 0.0}},
    {{5.0, 0.0}, {3.1780538303479456196, 0.0}},
    {{0.5, 10.0}, {-14.789024734744293451, 13.030020034911089851}},
    {{0.5, -10.0}, {-14.789024734744293451, -13.030020034911089851}},
    {{12.0, 30.0}, {-6.8216171094237581859, 87.948161277706036425}},
    {{-8.25, 2.75}, {-17.520033502987042174, -21.478688235395473474}},
    {{-30.5, -12.5}, {-111.34745831507965794, 54.14068764233192957}},
    {{40.0, -20.0}, {101.76547659025277395, -74.322271848171633288}},
    {{3.25, -49.0}, {-65.346180972858925383, -145.94260428819759141}},
    {{-49.5, 0.75}, {-147.04089149414867838, -154.14557480600281374}},
    {{-0.5, 0.5}, {0.45896083308959576723, -3.1069236923143956735}},
    {{25.0, 25.0}, {43.63916183049965969, 83.376823759729749089}},
    {{-15.5, 40.0}, {-121.34224170680827168, 79.303633005562668302}},
    {{2.0, -2.0}, {-1.0713598302138791539, -1.2367950341038788144}},
    {{49.5, 1.0}, {142.60707980167882006, 3.8919070503530666749}},
};

} // namespace

TEST_CASE("ln_gamma at classic real points") {
    CHECK(rel_err(oscsheet::ln_gamma(cplx{0.5}), std::log(std::sqrt(oscsheet::pi))) < 1e-14);
    CHECK(rel_err(oscsheet::ln_gamma(cplx{5.0}), std::log(24.0)) < 1e-14);
}

TEST_CASE("ln_gamma(1/6) against an independent product evaluation") {
    // 50-term downward product on top of libm's lgamma at the shifted point.
    double product = 0.0;
    for (int k = 0; k < 50; ++k) product += std::log(1.0 / 6.0 + k);
    const double reference = std::lgamma(50.0 + 1.0 / 6.0) - product;
    CHECK(std::abs(oscsheet::ln_gamma(cplx{1.0 / 6.0}).real() - reference) < 1e-12);
    CHECK(std::abs(reference - 1.7167334350782404605) < 1e-12);

    // reflection closure: Gamma(1/6) Gamma(5/6) = pi / sin(pi/6) = 2 pi
    const cplx lhs =
        std::exp(oscsheet::ln_gamma(cplx{1.0 / 6.0}) + oscsheet::ln_gamma(cplx{5.0 / 6.0}));
    CHECK(rel_err(lhs, 2.0 * oscsheet::pi) < 1e-13);
}

TEST_CASE("ln_gamma principal branch over the |z| <= 50 band") {
    for (const auto& ref : log_gamma_refs) {
        const cplx got = oscsheet::ln_gamma(ref.z);
        // |delta ln Gamma| bounds the relative error of Gamma itself
        CHECK(std::abs(got - ref.value) < 1e-13);
    }
}

TEST_CASE("ln_gamma pole rejection") {
    CHECK_THROWS_AS(oscsheet::ln_gamma(cplx{0.0}), oscsheet::pole_error);
    CHECK_THROWS_AS(oscsheet::ln_gamma(cplx{-3.0}), oscsheet::pole_error);
    CHECK_NOTHROW(oscsheet::ln_gamma(cplx{-3.0, 0.5}));
    CHECK_NOTHROW(oscsheet::ln_gamma(cplx{-3.5, 0.0}));
}

TEST_CASE("ln_gamma recurrence property") {
    testutil::Rng rng(20240617);
    int checked = 0;
    while (checked < 200) {
        const cplx z = rng.in_disk(20.0);
        if (z.real() < 0.75 && std::abs(z.imag()) < 0.05) continue;   // poles of either side
        const cplx lhs = std::exp(oscsheet::ln_gamma(z + 1.0));
        const cplx rhs = z * std::exp(oscsheet::ln_gamma(z));
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
        ++checked;
    }
}

TEST_CASE("pochhammer basics") {
    CHECK(oscsheet::pochhammer(cplx{2.5, 1.0}, 0) == cplx{1.0});
    CHECK(rel_err(oscsheet::pochhammer(cplx{1.0}, 4), 24.0) < 1e-15);
    CHECK(rel_err(oscsheet::pochhammer(cplx{1.0 / 6.0}, 2), 7.0 / 36.0) < 1e-15);
}

TEST_CASE("hyp2f1_series special values") {
    const HyperParams p{cplx{1.0 / 6.0}, cplx{1.0 / 6.0}, cplx{0.5}};
    CHECK(oscsheet::hyp2f1_series(p, cplx{0.0}) == cplx{1.0});

    // 2F1(1,1;2;z) = -log(1-z)/z
    const HyperParams q{cplx{1.0}, cplx{1.0}, cplx{2.0}};
    CHECK(rel_err(oscsheet::hyp2f1_series(q, cplx{0.5}), 2.0 * std::log(2.0)) < 1e-14);

    CHECK_THROWS_AS(oscsheet::hyp2f1_series(p, cplx{0.9}), oscsheet::margin_error);
    CHECK_THROWS_AS((HyperParams{cplx{1.0}, cplx{1.0}, cplx{-2.0}}), oscsheet::pole_error);
}

TEST_CASE("hyp2f1_series equals the raw pochhammer sum") {
    testutil::Rng rng(987123);
    for (int trial = 0; trial < 20; ++trial) {
        const HyperParams p{rng.in_disk(2.0), rng.in_disk(2.0), rng.in_disk(2.0) + 3.0};
        const cplx z = rng.in_disk(0.75);
        cplx direct = 0.0;
        double mfact = 1.0;
        for (int m = 0; m < 110; ++m) {
            if (m > 0) mfact *= m;
            direct += oscsheet::pochhammer(p.a, m) * oscsheet::pochhammer(p.b, m) /
                      (oscsheet::pochhammer(p.c, m) * mfact) * std::pow(z, m);
        }
        CHECK(rel_err(oscsheet::hyp2f1_series(p, z), direct) < 1e-12);
    }
}

TEST_CASE("transport: zero-length and contractible paths") {
    const HyperParams p{cplx{1.0 / 6.0}, cplx{1.0 / 6.0}, cplx{0.5}};
    const cplx z0{0.4, 0.1};
    const HyperState init{z0, cplx{1.1, -0.3}, cplx{0.2, 0.7}};

    const PathSpec still{z0, {z0}, false};
    const HyperState same = oscsheet::hyp2f1_transport(p, still, init);
    CHECK(std::abs(same.f - init.f) < 1e-14);
    CHECK(std::abs(same.df - init.df) < 1e-14);

    const PathSpec loop = oscsheet::circle_path(z0, 0.05, 16, 1);
    const HyperState init_at_base{loop.base, init.f, init.df};
    const HyperState back = oscsheet::hyp2f1_transport(p, loop, init_at_base);
    CHECK(std::abs(back.f - init.f) < 1e-9);
    CHECK(std::abs(back.df - init.df) < 1e-9);
}

TEST_CASE("transport respects the singular-point clearance") {
    const HyperParams p{cplx{1.0 / 6.0}, cplx{1.0 / 6.0}, cplx{0.5}};
    const PathSpec through_one{cplx{0.5}, {cplx{1.5}}, false};
    CHECK_THROWS_AS(oscsheet::hyp2f1_transport(p, through_one, {cplx{0.5}, 1.0, 0.0}),
                    oscsheet::path_error);
    const PathSpec off_base{cplx{0.5}, {cplx{0.5, 0.4}}, false};
    CHECK_THROWS_AS(oscsheet::hyp2f1_transport(p, off_base, {cplx{0.4}, 1.0, 0.0}),
                    oscsheet::path_error);
}

TEST_CASE("transport inverts along the reversed path") {
    const HyperParams p{cplx{1.0 / 6.0}, cplx{1.0 / 6.0}, cplx{0.5}};
    const PathSpec fwd{cplx{0.3}, {cplx{0.3, 0.4}, cplx{-0.4, 0.5}, cplx{-0.6, -0.1}}, false};
    const HyperState init{cplx{0.3}, cplx{0.9, 0.2}, cplx{-0.1, 0.4}};
    const HyperState there = oscsheet::hyp2f1_transport(p, fwd, init);
    const HyperState back = oscsheet::hyp2f1_transport(p, oscsheet::reversed(fwd), there);
    CHECK(std::abs(back.f - init.f) < 1e-9);
    CHECK(std::abs(back.df - init.df) < 1e-9);
}

TEST_CASE("transport composes over concatenated paths") {
    const HyperParams p{cplx{1.0 / 6.0}, cplx{1.0 / 6.0}, cplx{0.5}};
    const PathSpec p1{cplx{0.3}, {cplx{0.3, 0.45}, cplx{-0.25, 0.5}}, false};
    const PathSpec p2{cplx{-0.25, 0.5}, {cplx{-0.55, 0.1}, cplx{-0.5, -0.4}}, false};
    const HyperState init{cplx{0.3}, cplx{1.0, 0.0}, cplx{0.0, 0.5}};

    const HyperState two_step =
        oscsheet::hyp2f1_transport(p, p2, oscsheet::hyp2f1_transport(p, p1, init));
    PathSpec joined{p1.base, p1.vertices, false};
    joined.vertices.insert(joined.vertices.end(), p2.vertices.begin(), p2.vertices.end());
    const HyperState one_step = oscsheet::hyp2f1_transport(p, joined, init);
    CHECK(std::abs(one_step.f - two_step.f) < 1e-9);
    CHECK(std::abs(one_step.df - two_step.df) < 1e-9);
}

TEST_CASE("monodromy of the solution pair around z = 1 has order 6") {
    const HyperParams p{cplx{1.0 / 6.0}, cplx{1.0 / 6.0}, cplx{0.5}};
    const Matrix2c m = oscsheet::hyp2f1_monodromy(p, oscsheet::circle_path(cplx{1.0}, 0.3, 48, 1));
    CHECK(m.pow(6).distance_to_identity() < 1e-8);
    CHECK(m.distance_to_identity() > 0.1);   // but not trivial
}

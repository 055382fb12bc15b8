#include <doctest.h>

#include <random>

#include "mqc/setup_two.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace mqc;

TEST_SUITE("setup_two") {

TEST_CASE("quad validation") {
    auto q = DetectorQuad::uniform(0.1, 0.0);
    q.theta = M_PI / 2;
    CHECK_THROWS_AS(q.validate(), PreconditionError);
    CHECK_THROWS_AS(DetectorQuad::uniform(0.0, 0.0).validate(), PreconditionError);
}

TEST_CASE("single clicks: vacuum and exclusivity") {
    const auto z = single_click_probs(DetectorQuad::uniform(0.3, 0.0), QubitState::zero(), 0);
    for (double v : z.p) CHECK(v == 0.0);

    std::mt19937_64 rng(12);
    for (int draw = 0; draw < 1000; ++draw) {
        const auto quad = support::random_quad(rng, 0.2);
        const auto p = single_click_probs(quad, support::random_state(rng), static_cast<int>(rng() % 30)).p;
        double sum = 0;
        for (double v : p) {
            CHECK(v >= -1e-15);
            CHECK(v <= 1.0);
            sum += v;
        }
        CHECK(sum <= 1.0 + 1e-12);
    }
}

TEST_CASE("single clicks and full distribution equal enumeration for k <= 5") {
    std::mt19937_64 rng(13);
    for (int draw = 0; draw < 12; ++draw) {
        const auto quad = support::random_quad(rng, 0.1);
        const auto s = support::random_state(rng);
        for (int k = 0; k <= 5; ++k) {
            const auto want = oracle::setup2_events(quad, s, k);
            const auto single = single_click_probs(quad, s, k).p;
            const auto full = quad_event_probs(quad, s, k);
            double sum = 0;
            for (int i = 0; i < 4; ++i) CHECK(std::abs(single[i] - want[1u << i]) < 1e-12);
            for (int m = 0; m < 16; ++m) {
                CHECK(std::abs(full[m] - want[m]) < 1e-12);
                sum += full[m];
            }
            CHECK(std::abs(sum - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("single photon, no darks, |0>, theta = 0") {
    const double eta = 0.4;
    const auto p = single_click_probs(DetectorQuad::uniform(eta, 0.0), QubitState::zero(), 1).p;
    CHECK(p[D0] == doctest::Approx(eta / 2));
    CHECK(p[D1] == doctest::Approx(0.0));
    CHECK(p[DPlus] == doctest::Approx(eta / 4));
    CHECK(p[DMinus] == doctest::Approx(eta / 4));
}

TEST_CASE("SLII strategy") {
    const auto eq = slii_strategy({0.3, 0.3, 0.3, 0.3});
    for (double v : eq) CHECK(v == 1.0);
    const auto s = slii_strategy({0.12, 0.12, 0.08, 0.08});
    CHECK(s[0] == doctest::Approx(2.0 / 3.0));
    CHECK(s[1] == doctest::Approx(2.0 / 3.0));
    CHECK(s[2] == 1.0);
    CHECK(s[3] == 1.0);
    const std::array<double, 4> f{0.2, 0.5, 0.1, 0.35};
    const auto t = slii_strategy(f);
    for (int i = 0; i < 4; ++i) CHECK(t[i] * f[i] == doctest::Approx(0.1));
    CHECK_THROWS_AS(slii_strategy({0.1, 0.0, 0.1, 0.1}), PreconditionError);

    std::mt19937_64 rng(14);
    for (int draw = 0; draw < 20; ++draw) {
        const auto quad = support::random_quad(rng, 0.05);
        const auto st = support::random_state(rng);
        const auto sl = slii_strategy(quad.eta);
        const int k = draw % 5;
        const auto got = slii_report_probs(quad, sl, st, k).p_report;
        const auto want = oracle::single_click_report(oracle::setup2_events(quad, st, k), sl);
        CHECK(std::abs(got[0] - want[0]) < 1e-12);
        CHECK(std::abs(got[1] - want[1]) < 1e-12);
    }
}

TEST_CASE("MPAII guessing probability") {
    const auto quad = DetectorQuad::uniform(0.1, 1e-5);
    CHECK(mpaii_guess(quad, 0) == 0.5);
    CHECK(mpaii_guess(quad, 1) == 0.5);
    CHECK(mpaii_guess(quad, 2) == doctest::Approx(0.50340076089984678).epsilon(1e-12));
    CHECK(mpaii_guess(quad, 150) == doctest::Approx(0.96522074109265813).epsilon(1e-12));
    CHECK(mpaii_guess(quad, 1000) == doctest::Approx(0.9999999999947621).epsilon(1e-12));
    for (int k = 2; k <= 300; ++k) CHECK(mpaii_guess(quad, k) > 0.5);

    // Agrees with the SLII report split computed from the enumeration of |0>^k.
    for (int k = 0; k <= 4; ++k) {
        const auto r = oracle::single_click_report(oracle::setup2_events(quad, QubitState::zero(), k), {1, 1, 1, 1});
        CHECK(mpaii_guess(quad, k) == doctest::Approx(std::max(r[0], r[1]) / (r[0] + r[1])).epsilon(1e-10));
    }

    auto uneven = quad;
    uneven.eta[2] = 0.2;
    CHECK_THROWS_AS(mpaii_guess(uneven, 3), PreconditionError);
}

TEST_CASE("RSDCII report probabilities") {
    const auto quad = DetectorQuad::uniform(0.1, 1e-5);
    for (int k = 0; k <= 50; ++k) {
        const auto r = rsdcii_report_probs(quad, k).p_report;
        CHECK(std::abs(r[0] - r[1]) < 1e-12);
    }
    DetectorQuad q;
    q.eta = {0.2, 0.2, 0.15, 0.15};
    q.d = {0.01, 0.02, 0.03, 0.04};
    const auto k0 = rsdcii_report_probs(q, 0).p_report;
    const double all = 0.99 * 0.98 * 0.97 * 0.96;
    CHECK(k0[0] == doctest::Approx(0.97 * 0.96 - all));
    CHECK(k0[1] == doctest::Approx(0.99 * 0.98 - all));

    std::mt19937_64 rng(15);
    for (int draw = 0; draw < 100; ++draw) {
        q.theta = support::uniform(rng, 0, 1.5);
        const auto st = support::random_state(rng);
        const int k = static_cast<int>(rng() % 8);
        const auto closed = rsdcii_report_probs(q, k).p_report;
        const auto general = rsdcii_report_probs_general(q, st, k).p_report;
        CHECK(std::abs(closed[0] - general[0]) < 1e-12);
        CHECK(std::abs(closed[1] - general[1]) < 1e-12);
    }
    q.eta[1] = 0.3;
    CHECK_THROWS_AS(rsdcii_report_probs(q, 2), PreconditionError);
}

TEST_CASE("setup II attack II") {
    const double a = (1 - 1e-5) * (1 - 1e-5);
    CHECK(attack2_setup2_guess(a, 0.105, 0.095, 0) == 0.5);
    CHECK(attack2_setup2_guess(a, 0.105, 0.095, 1) == doctest::Approx(0.52499100328380164).epsilon(1e-12));
    CHECK(attack2_setup2_guess(a, 0.105, 0.095, 500) == doctest::Approx(0.93286688155688583).epsilon(1e-12));
    CHECK(attack2_setup2_guess(a, 0.105, 0.095, 20000) == doctest::Approx(1.0));
    CHECK_THROWS_AS(attack2_setup2_guess(a, 0.1, 0.1, 3), PreconditionError);

    for (double eta0 : {0.05, 0.105, 0.3})
        for (double etap : {0.04, 0.095, 0.35}) {
            if (eta0 == etap) continue;
            double prev = 0.5;
            for (int k = 1; k <= 600; ++k) {
                const double v = attack2_setup2_guess(a, eta0, etap, k);
                CHECK(v > 0.5);
                CHECK(v >= prev - 1e-15);
                prev = v;
            }
        }

    // The closed form matches the pair-click report split from the full enumeration.
    DetectorQuad q;
    q.eta = {0.105, 0.105, 0.095, 0.095};
    q.d = {1e-5, 1e-5, 1e-5, 1e-5};
    for (int k = 0; k <= 5; ++k) {
        const auto r = rsdcii_report_probs_general(q, QubitState::plus(), k).p_report;
        CHECK(attack2_setup2_guess(a, 0.105, 0.095, k) == doctest::Approx(std::max(r[0], r[1]) / (r[0] + r[1])).epsilon(1e-10));
    }
}

TEST_CASE("SLII single-photon gap") {
    CHECK(slii_single_photon_gap(0.0, 1) == 0.0);
    CHECK(slii_single_photon_gap(1e-5, 1) == doctest::Approx(6e-5));
    CHECK_THROWS_AS(slii_single_photon_gap(1e-5, 2), PreconditionError);

    std::mt19937_64 rng(16);
    int violations = 0;
    for (int draw = 0; draw < 1000; ++draw) {
        const double delta = support::uniform(rng, 0.0, 0.05);
        auto quad = support::random_quad(rng, 0.0);
        for (auto& d : quad.d) d = support::uniform(rng, 0.0, delta);
        const auto st = support::random_state(rng);
        for (int k = 0; k <= 1; ++k) {
            const auto r = slii_report_probs(quad, slii_strategy(quad.eta), st, k).p_report;
            if (std::abs(r[1] - r[0]) > slii_single_photon_gap(delta, k) + 1e-15) ++violations;
        }
    }
    CHECK(violations == 0);
}

}

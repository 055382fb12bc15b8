#include <doctest.h>

#include <random>

#include "mqc/bounds.hpp"
#include "mqc/reporting.hpp"
#include "support.hpp"

using namespace mqc;

namespace {

// Integer maximizer of an envelope over k in [0, kmax].
template <typename F>
std::pair<int, double> scan(F f, int kmax) {
    int best = 0;
    double v = f(0);
    for (int k = 1; k <= kmax; ++k)
        if (f(k) > v) v = f(k), best = k;
    return {best, v};
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("single-pulse guess bound") {
    CHECK(guess_bound_single(0.0, 0.0) == 0.5);
    CHECK(guess_bound_single(0.0, 1.0) == 1.0);
    CHECK(guess_bound_single(0.01, 0.1) == doctest::Approx(0.561));
}

TEST_CASE("equal efficiencies give 2 delta") {
    CHECK(bound_B_II({0.5, 0.5, 1e-5}).value == doctest::Approx(2e-5).epsilon(1e-14));
    CHECK(bound_B_III(0.5, 0.5, 1e-5).value == doctest::Approx(2e-5).epsilon(1e-14));
    CHECK(bound_B_III(0.3, 0.3, 0.0).value == 0.0);
}

TEST_CASE("frozen values at eta = 0.5 +- 0.005, delta = 1e-5") {
    // High-precision evaluations from tests/oracle/frozen.py.
    const auto b2 = bound_B_II({0.495, 0.505, 1e-5});
    CHECK(b2.value == doctest::Approx(0.01062196750757388).epsilon(1e-10));
    CHECK(b2.b_exp == doctest::Approx(1.4416910882802428).epsilon(1e-10));
    const auto b3 = bound_B_III(0.495, 0.505, 1e-5);
    CHECK(b3.value == doctest::Approx(0.025059854114268873).epsilon(1e-10));
    CHECK(b3.b_exp == doctest::Approx(2.4416910882802428).epsilon(1e-10));
    CHECK(b3.b_det >= 1 - 0.495 / 0.505);
}

TEST_CASE("closed form dominates the integer scan and the maximizers agree") {
    std::mt19937_64 rng(8);
    for (int draw = 0; draw < 300; ++draw) {
        const double eta = support::uniform(rng, 0.02, 0.9);
        const double w = support::uniform(rng, 1e-4, 0.05) * eta;
        const double delta = std::pow(10.0, support::uniform(rng, -7, -3));
        const EfficiencyEnvelope env{eta - w, eta + w, delta};
        const auto b2 = bound_B_II(env);
        const auto [k2, f2] = scan([&](int k) { return envelope_f(env, k); }, 100000);
        CHECK(b2.b_det >= f2 - 1e-12);
        if (b2.b_exp >= 0) CHECK(std::abs(k2 - std::lround(b2.b_exp)) <= 1);

        const auto b3 = bound_B_III(env.eta_low, env.eta_up, delta);
        const auto [k3, g3] = scan([&](int k) { return envelope_g(env.eta_low, env.eta_up, delta, k); }, 100000);
        CHECK(b3.b_det >= g3 - 1e-12);
        if (b3.b_exp >= 0) CHECK(std::abs(k3 - std::lround(b3.b_exp)) <= 1);
    }
}

TEST_CASE("negative exponent falls back to k = 0") {
    // Large delta with a tiny gap pushes B_exp below zero; the physical maximum is at k = 0.
    const EfficiencyEnvelope env{0.5, 0.5001, 0.2};
    const auto b = bound_B_II(env);
    CHECK(b.b_exp < 0);
    CHECK(b.b_det == doctest::Approx(envelope_f(env, 0.0)));
    CHECK(b.value == doctest::Approx(0.4));
}

TEST_CASE("bounds are monotone in the efficiency gap and in delta") {
    for (double eta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (double delta : {0.0, 1e-6, 1e-5, 1e-3}) {
            double prev2 = 0, prev3 = 0;
            for (int i = 0; i <= 100; ++i) {
                const double w = 0.01 * i / 100;
                const auto b2 = bound_B_II({eta - w, eta + w, delta}).value;
                const auto b3 = bound_B_III(eta - w, eta + w, delta).value;
                CHECK(b2 >= prev2 - 1e-15);
                CHECK(b3 >= prev3 - 1e-15);
                prev2 = b2, prev3 = b3;
            }
        }
        for (double w : {0.0, 0.001, 0.005, 0.01}) {
            double prev2 = 0, prev3 = 0;
            for (double delta : {0.0, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 0.1}) {
                const auto b2 = bound_B_II({eta - w, eta + w, delta}).value;
                const auto b3 = bound_B_III(eta - w, eta + w, delta).value;
                CHECK(b2 >= prev2 - 1e-15);
                CHECK(b3 >= prev3 - 1e-15);
                prev2 = b2, prev3 = b3;
            }
        }
    }
}

TEST_CASE("bound validity over random scenarios") {
    std::mt19937_64 rng(9);
    int violations2 = 0, violations3 = 0;
    for (int draw = 0; draw < 10000; ++draw) {
        const double eta = support::uniform(rng, 0.02, 0.95);
        const double w = support::uniform(rng, 0.0, 0.02) * eta;
        const double delta = support::uniform(rng, 0.0, 0.01);
        DetectorPair det;
        for (int i = 0; i < 2; ++i)
            for (int b = 0; b < 2; ++b) {
                det.eta[i][b] = support::uniform(rng, eta - w, eta + w);
                det.d[i][b] = support::uniform(rng, 0.0, delta);
            }
        const auto s = support::random_state(rng);
        const BasisPair bases{support::uniform(rng, 0.01, 1.0)};
        const int k = static_cast<int>(rng() % 31);
        const auto e0 = det_probs_fixed_k(det, overlap_q(s, bases, 0), 0, k);
        const auto e1 = det_probs_fixed_k(det, overlap_q(s, bases, 1), 1, k);

        const auto s2 = make_strategy_II();
        if (std::abs(report_prob(s2, e1, 1) - report_prob(s2, e0, 0)) > bound_B_II({eta - w, eta + w, delta}).value + 1e-12)
            ++violations2;

        const double lo = det.eta_min(), hi = det.eta_max();
        const auto s3 = make_strategy_III(det, support::uniform(rng, lo / hi, 1.0), support::uniform(rng, lo / hi, 1.0));
        if (std::abs(report_prob(s3, e1, 1) - report_prob(s3, e0, 0)) > bound_B_III(lo, hi, delta).value + 1e-12)
            ++violations3;
    }
    CHECK(violations2 == 0);
    CHECK(violations3 == 0);
}

TEST_CASE("multi-pulse composition") {
    CHECK(multi_pulse_bound(std::vector<double>{0.0, 0.0}).value == 0.5);
    CHECK(multi_pulse_bound(std::vector<double>{0.1, 0.2}).value == doctest::Approx(0.65));
    const auto b = bound_B_II({0.055, 0.065, 1e-5});
    CHECK(b.value == doctest::Approx(0.063320813375535467).epsilon(1e-10));
    const auto c = multi_pulse_bound(2200000, b.value);
    CHECK(c.vacuous());
    CHECK(c.presented() == 1.0);
    CHECK(c.value == doctest::Approx(69653.394713089013).epsilon(1e-9));
}

TEST_CASE("mixed-pulse bound") {
    MixedPulseInputs base;
    base.n = 1000;
    base.eps = 0.0;
    base.delta_empty = 1.0;
    base.delta_mult = 0.0;
    base.b1 = 0.0;
    CHECK(mixed_pulse_bound(base).value == 0.5);

    MixedPulseInputs ex;
    ex.n = 10000;
    ex.eps = 1e-6;
    ex.delta_empty = 1.0;
    ex.delta_mult = 1e-3;
    ex.b0 = 2e-5;
    ex.b1 = 1.1e-4;
    ex.b_mult = 0.02;
    CHECK(mixed_pulse_bound(ex).value == doctest::Approx(1.14944985055).epsilon(1e-12));

    MixedPulseInputs bad = ex;
    bad.delta_mult = 0.5;
    bad.delta_empty = 0.4;
    CHECK_THROWS_AS(mixed_pulse_bound(bad), PreconditionError);
}

}

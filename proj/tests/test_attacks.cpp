#include <doctest.h>

#include "mqc/attacks.hpp"
#include "mqc/montecarlo.hpp"

using namespace mqc;

TEST_SUITE("attacks") {

TEST_CASE("attack I closed form") {
    CHECK(attack1_guess_coherent(0.12, 0.0) == 0.5);
    CHECK(attack1_guess_coherent(0.12, 1e-9) == doctest::Approx(0.5));
    CHECK(attack1_guess_coherent(0.12, 20.0) == doctest::Approx(0.74416476473250416).epsilon(1e-13));
    CHECK(attack1_guess_coherent(0.12, 2000.0) == doctest::Approx(1.0));
    CHECK(attack1_guess_coherent(0.12, 49.5) > 0.95);
    CHECK(attack1_guess_coherent(0.12, 49.49) < 0.95);

    double prev = 0.5;
    for (int i = 1; i <= 300; ++i) {
        const double v = attack1_guess_coherent(0.12, 0.1 * i);
        CHECK(v > prev);
        CHECK(v < 1.0);
        prev = v;
    }
    for (double mu : {1.0, 5.0, 20.0})
        CHECK(attack1_guess_coherent(0.2, mu) > attack1_guess_coherent(0.1, mu));
}

TEST_CASE("attack I general form") {
    const auto det = DetectorPair::uniform(0.12);
    for (double mu : {0.5, 5.0, 20.0}) {
        const auto e0 = det_probs_coherent(det, 1.0, 0, mu);
        const auto e1 = det_probs_coherent(det, 0.5, 1, mu);
        CHECK(attack1_guess_general(e0, e1) == doctest::Approx(attack1_guess_coherent(0.12, mu)).epsilon(1e-12));
        CHECK(attack1_guess_general(e0, e0) == 0.5);
    }
    EventDistribution uni;
    for (auto& row : uni.p)
        for (auto& v : row) v = 0.25;
    CHECK(attack1_guess_general(uni, uni) == 0.5);

    const auto dark = DetectorPair::uniform(0.12, 1e-5);
    const double g = attack1_guess_general(det_probs_coherent(dark, 1.0, 0, 5.0), det_probs_coherent(dark, 0.5, 1, 5.0));
    CHECK(g == doctest::Approx(0.5335872614893217).epsilon(1e-12));
}

TEST_CASE("attack II Chernoff bound") {
    const auto o = attack2_chernoff(1000000, 0.01, {0.3, 0.6}, {0.05, 0.05});
    CHECK(o.at("g0") == doctest::Approx(0.0525).epsilon(1e-14));
    CHECK(o.at("g1") == doctest::Approx(0.0555).epsilon(1e-14));
    CHECK(o.at("delta") == doctest::Approx(0.027777777777777778).epsilon(1e-12));
    CHECK(o.at("G_N") == doctest::Approx(53958.333333333333).epsilon(1e-12));
    CHECK(o.guess_prob == doctest::Approx(0.99999931638177644).epsilon(1e-12));

    CHECK_THROWS_AS(attack2_chernoff(1000, 0.5, {0.3, 0.3}, {0.1, 0.1}), PreconditionError);
    CHECK_THROWS_AS(attack2_chernoff(1000, 0.5, {0.6, 0.3}, {0.1, 0.1}), PreconditionError);
    CHECK_THROWS_AS(attack2_chernoff(1000, 1.0, {0.3, 0.6}, {0.1, 0.1}), PreconditionError);

    double prev = 0;
    for (std::uint64_t n : {1000ULL, 10000ULL, 100000ULL, 1000000ULL, 100000000ULL}) {
        const double b = attack2_chernoff(n, 0.01, {0.3, 0.6}, {0.05, 0.05}).guess_prob;
        CHECK(b >= prev);
        prev = b;
    }
    CHECK(prev == doctest::Approx(1.0));
}

TEST_CASE("attack II bound holds empirically") {
    for (std::uint64_t n : {20000ULL, 100000ULL, 1000000ULL}) {
        const auto o = attack2_chernoff(n, 0.01, {0.3, 0.6}, {0.05, 0.05});
        const auto e = attack2_empirical_guess(n, 0.01, {0.3, 0.6}, {0.05, 0.05}, 200, 77 + n);
        CHECK(e.value + 3 * std::max(e.std_error, 1.0 / 200) >= o.guess_prob);
    }
}

TEST_CASE("double-photon attack") {
    const auto o = double_photon_attack({});
    CHECK(o.at("P0_1") == doctest::Approx(0.22561548792256).epsilon(1e-12));
    CHECK(o.at("P1_1") == doctest::Approx(0.190016199919).epsilon(1e-12));
    CHECK(o.at("delta") == doctest::Approx(0.085651044049198076).epsilon(1e-12));
    CHECK(o.at("G") == doctest::Approx(1226.4396318624279).epsilon(1e-12));
    CHECK(o.fail_prob_bound == doctest::Approx(0.035216711961923332).epsilon(1e-12));
    // G splits the two expectations symmetrically.
    CHECK(o.at("E1") * (1 + o.at("delta")) == doctest::Approx(o.at("G")));
    CHECK(o.at("E0") * (1 - o.at("delta")) == doctest::Approx(o.at("G")));

    DoublePhotonParams eq;
    eq.eta1 = eq.eta0;
    CHECK_THROWS_AS(double_photon_attack(eq), PreconditionError);

    DoublePhotonParams fewer;
    fewer.n = 2000000;
    CHECK(double_photon_attack(fewer).fail_prob_bound == doctest::Approx(0.68501182973509964).epsilon(1e-12));
    double prev = 1.0;
    for (std::uint64_t n : {1000000ULL, 2000000ULL, 5000000ULL, 20000000ULL, 80000000ULL}) {
        DoublePhotonParams p;
        p.n = n;
        const double b = double_photon_attack(p).fail_prob_bound;
        CHECK(b <= prev);
        prev = b;
    }
}

TEST_CASE("double-photon failure frequency stays under its bound") {
    for (std::uint64_t n : {2000000ULL, 20000000ULL}) {
        DoublePhotonParams p;
        p.n = n;
        const double bound = double_photon_attack(p).fail_prob_bound;
        const auto e = double_photon_failure_rate(p, 200, 1234 + n);
        CHECK(e.value <= bound + 3 * std::max(e.std_error, 1.0 / 200));
    }
}

TEST_CASE("coin-flipping attack") {
    CHECK(coinflip_failure_term(0.68, 40) == doctest::Approx(6.050028516397249e-8).epsilon(1e-12));
    CHECK(coinflip_attack_success(1.0, 1) == 0.5);
    CHECK(coinflip_attack_success(1.0, 200) == doctest::Approx(1.0));
    CHECK(coinflip_double_click_abort(1.0, 1) == doctest::Approx(0.125));
    CHECK(coinflip_double_click_abort(1.0, 500) == doctest::Approx(1.0));
    CHECK(coinflip_double_click_abort(0.68, 10) == doctest::Approx(0.58865053134002388).epsilon(1e-12));
    CHECK(coinflip_double_click_success_ceiling(1.0) == doctest::Approx(0.875));
    CHECK_THROWS_AS(coinflip_attack_success(0.0, 3), PreconditionError);
    CHECK_THROWS_AS(coinflip_attack_success(0.5, 0), PreconditionError);
}

}

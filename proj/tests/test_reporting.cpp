#include <doctest.h>

#include <random>

#include "mqc/reporting.hpp"
#include "support.hpp"

using namespace mqc;

TEST_SUITE("reporting") {

TEST_CASE("named strategies") {
    const auto s1 = make_strategy_I();
    CHECK(s1(1, 0, 0) == 1.0);
    CHECK(s1(1, 1, 1) == 0.0);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int beta = 0; beta < 2; ++beta) CHECK((s1(a, b, beta) == 0.0 || s1(a, b, beta) == 1.0));

    const auto s2 = make_strategy_II();
    CHECK(s2(0, 0, 0) == 0.0);
    CHECK(s2(1, 1, 0) == 1.0);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) CHECK(s2(a, b, 0) == s2(a, b, 1));
}

TEST_CASE("strategy III") {
    const auto eq = make_strategy_III(DetectorPair::uniform(0.12), 0.0, 0.0);
    CHECK(eq(0, 1, 0) == 1.0);
    CHECK(eq(1, 0, 1) == 1.0);

    const auto det = DetectorPair::basis_independent(0.12, 0.08);
    const auto s = make_strategy_III(det, 0.7, 0.9);
    CHECK(s(1, 0, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(s(0, 1, 1) == doctest::Approx(1.0));
    CHECK(s(1, 1, 0) == 0.7);
    CHECK(s(1, 1, 1) == 0.9);
    CHECK(s(0, 0, 0) == 0.0);

    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        const auto d = support::random_det(rng, 0.01);
        const auto t = make_strategy_III(d, 0.5, 0.5);
        for (int beta = 0; beta < 2; ++beta) {
            CHECK(t(0, 1, beta) * d.eta[1][beta] == doctest::Approx(d.eta_min()));
            CHECK(t(1, 0, beta) * d.eta[0][beta] == doctest::Approx(d.eta_min()));
        }
    }
}

TEST_CASE("trivial strategy") {
    CHECK(make_trivial(1.0)(0, 0, 0) == 1.0);
    CHECK(make_trivial(0.3)(1, 1, 1) == 0.3);
    CHECK_THROWS_AS(make_trivial(0.0), PreconditionError);

    std::mt19937_64 rng(2);
    for (int i = 0; i < 200; ++i) {
        const auto det = support::random_det(rng, 0.2);
        const auto ev = det_probs_fixed_k(det, support::uniform(rng, 0, 1), i % 2, static_cast<int>(rng() % 20));
        CHECK(report_prob(make_trivial(0.37), ev, i % 2) == doctest::Approx(0.37).epsilon(1e-14));
    }
}

TEST_CASE("symmetrized strategy") {
    SingleClickFreqs all{{{0.1, 0.1}, {0.1, 0.1}}};
    const auto s = make_symmetrized(all);
    CHECK(s(0, 1, 0) == 1.0);
    CHECK(s(1, 0, 1) == 1.0);
    CHECK(s(1, 1, 0) == 0.0);
    CHECK(s(0, 0, 1) == 0.0);

    // freq[c][beta] for event (c, 1-c): the 0.2 slot is (c=0, beta=1), i.e. event (0,1) in B_1.
    SingleClickFreqs f{{{0.1, 0.2}, {0.1, 0.1}}};
    const auto t = make_symmetrized(f);
    CHECK(t(0, 1, 1) == doctest::Approx(0.5));
    CHECK(t(0, 1, 0) == 1.0);
    CHECK(t(1, 0, 0) == 1.0);
    CHECK(t(1, 0, 1) == 1.0);
    for (int c = 0; c < 2; ++c)
        for (int beta = 0; beta < 2; ++beta) CHECK(t(c, 1 - c, beta) * f[c][beta] == doctest::Approx(0.1));

    SingleClickFreqs bad{{{0.0, 0.2}, {0.1, 0.1}}};
    CHECK_THROWS_AS(make_symmetrized(bad), PreconditionError);
}

TEST_CASE("report probability examples") {
    const double eta = 0.2, d0 = 0.01, d1 = 0.03;
    const auto det = DetectorPair::basis_independent(eta, eta, d0, d1);
    for (int k = 0; k < 8; ++k) {
        const auto ev = det_probs_fixed_k(det, 0.3, 0, k);
        CHECK(report_prob(make_strategy_II(), ev, 0) ==
              doctest::Approx(1 - (1 - d0) * (1 - d1) * std::pow(1 - eta, k)).epsilon(1e-13));
    }
    EventDistribution dbl;
    dbl.p[1][1] = 1.0;
    CHECK(report_prob(make_strategy_I(), dbl, 0) == 0.0);
}

TEST_CASE("strategy II is basis independent under equal efficiencies") {
    std::mt19937_64 rng(4);
    for (int draw = 0; draw < 1000; ++draw) {
        const double eta = support::uniform(rng, 0.01, 0.99);
        const auto det = DetectorPair::basis_independent(eta, eta, support::uniform(rng, 0, 0.2), support::uniform(rng, 0, 0.2));
        const auto s = support::random_state(rng);
        const BasisPair bases{support::uniform(rng, 0.01, 1.0)};
        const int k = static_cast<int>(rng() % 11);
        const double p0 = report_prob(make_strategy_II(), det_probs_fixed_k(det, overlap_q(s, bases, 0), 0, k), 0);
        const double p1 = report_prob(make_strategy_II(), det_probs_fixed_k(det, overlap_q(s, bases, 1), 1, k), 1);
        CHECK(std::abs(p0 - p1) < 1e-12);
    }
}

TEST_CASE("report probability is monotone in every entry") {
    std::mt19937_64 rng(5);
    for (int draw = 0; draw < 300; ++draw) {
        const auto det = support::random_det(rng, 0.1);
        const int beta = draw % 2;
        const auto ev = det_probs_fixed_k(det, support::uniform(rng, 0, 1), beta, static_cast<int>(rng() % 10));
        ReportingStrategy s;
        for (auto& a : s.S)
            for (auto& b : a)
                for (auto& v : b) v = support::uniform(rng, 0, 1);
        const double base = report_prob(s, ev, beta);
        ReportingStrategy t = s;
        const int c0 = rng() % 2, c1 = rng() % 2;
        t.S[c0][c1][beta] = std::min(1.0, t.S[c0][c1][beta] + support::uniform(rng, 0, 0.5));
        CHECK(report_prob(t, ev, beta) >= base - 1e-15);
    }
}

TEST_CASE("single-photon bound for strategy III") {
    CHECK(lemma1_bound(0.0, 0.8, 1) == 0.0);
    CHECK(lemma1_bound(1e-5, 1.0, 1) == doctest::Approx(1.1e-4 + 3e-10).epsilon(1e-14));
    CHECK(lemma1_bound(0.01, 0.3, 0) == doctest::Approx(0.02));
    CHECK_THROWS_AS(lemma1_bound(0.01, 0.3, 2), PreconditionError);

    std::mt19937_64 rng(6);
    int violations = 0;
    for (int draw = 0; draw < 1000; ++draw) {
        const double delta = support::uniform(rng, 0.0, 0.05);
        DetectorPair det = support::random_det(rng, 0.0);
        for (auto& row : det.d)
            for (auto& v : row) v = support::uniform(rng, 0.0, delta);
        const double s11_0 = support::uniform(rng, 0, 1), s11_1 = support::uniform(rng, 0, 1);
        const auto strat = make_strategy_III(det, s11_0, s11_1);
        const auto s = support::random_state(rng);
        const BasisPair bases{support::uniform(rng, 0.01, 1.0)};
        const int k = draw % 2;
        const double p0 = report_prob(strat, det_probs_fixed_k(det, overlap_q(s, bases, 0), 0, k), 0);
        const double p1 = report_prob(strat, det_probs_fixed_k(det, overlap_q(s, bases, 1), 1, k), 1);
        if (std::abs(p1 - p0) > lemma1_bound(delta, std::max(s11_0, s11_1), k) + 1e-15) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("feasibility of the trivial strategy") {
    FeasibilityInputs in;
    in.delta00_I = in.delta11_I = 0.005;
    in.delta_err_equal = 0.01;
    in.delta_err_diff = 0.001;
    in.delta_error = 0.01;
    const auto v = trivial_feasibility(in);
    CHECK(v.first_class_ok);
    CHECK(v.first_lhs == doctest::Approx(0.0061));

    FeasibilityInputs weak;
    weak.delta00_II = 0.95;
    weak.delta_det = 0.04;
    weak.delta_error = 0.046;
    const auto w = trivial_feasibility(weak);
    CHECK(w.det_rhs == doctest::Approx(3.8));
    CHECK_FALSE(w.det_condition);
    CHECK(w.error_condition);
    CHECK_FALSE(w.second_class_forces_nontrivial);

    FeasibilityInputs high;
    high.delta_error = 1.0 / 12.0;
    high.delta_det = 0.5;
    CHECK_FALSE(trivial_feasibility(high).error_condition);

    FeasibilityInputs bad;
    bad.delta_det = 1.0;
    CHECK_THROWS_AS(trivial_feasibility(bad), PreconditionError);
}

}

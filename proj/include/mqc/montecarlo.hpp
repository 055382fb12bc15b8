#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "mqc/attacks.hpp"
#include "mqc/optics.hpp"
#include "mqc/reporting.hpp"
#include "mqc/setup_two.hpp"

namespace mqc {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

// Stream for worker w: mt19937_64 seeded with splitmix64(splitmix64(seed) ^ (w + 1) * golden).
// Streams are independent for distinct (seed, w); the same pair always yields the same stream.
Rng make_stream(std::uint64_t seed, std::uint64_t worker);

// Reads MQC_SEED; falls back to `fallback` when unset or unparsable.
std::uint64_t default_seed(std::uint64_t fallback = 1);

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;

    static Estimate from_counts(std::uint64_t hits, std::uint64_t n);
    // |value - truth| <= n_sigma * sqrt(truth (1 - truth) / n).
    bool within(double truth, double n_sigma = 3.0) const;
};

struct SimConfig {
    std::uint64_t seed = 1;
    std::uint64_t pulses = 1000000;
    unsigned workers = 1;

    void validate() const;
};

int sample_photons(Rng& rng, const PulseSpec& pulse);

struct Event {
    int c0 = 0;
    int c1 = 0;
};

Event sample_event(Rng& rng, const DetectorPair& det, double q_beta, int beta, int k);

// Bit i of the result is set iff quad detector i clicked.
unsigned sample_event_quad(Rng& rng, const DetectorQuad& quad, const QubitState& state, int k);

struct SetupOneScenario {
    DetectorPair det = DetectorPair::uniform(0.12);
    BasisPair bases{};
    QubitState state{};
    PulseSpec pulse = Coherent{1.0};
    int beta = 0;
};

// Order: p00, p01, p10, p11.
std::array<Estimate, 4> estimate_event_probs(const SimConfig& cfg, const SetupOneScenario& sc);

std::array<Estimate, 16> estimate_quad_events(const SimConfig& cfg, const DetectorQuad& quad,
                                              const QubitState& state, const PulseSpec& pulse);

enum class QuadRule { SLII, RSDCII };

struct QuadReportEstimate {
    std::array<Estimate, 2> p_report;
    Estimate basis0_given_report;  // fraction of reported pulses assigned to B_0
};

QuadReportEstimate estimate_quad_report(const SimConfig& cfg, const DetectorQuad& quad,
                                        const std::array<double, 4>& slii_s,
                                        const QubitState& state, const PulseSpec& pulse,
                                        QuadRule rule);

// ---- protocol harness ----

struct PulseClass {
    PulseSpec source = Coherent{1.0};
    QubitState state{};
    std::string label;
};

struct AliceSchedule {
    std::vector<PulseClass> classes;  // each pulse draws one class by weight
    std::vector<double> weights;      // empty means uniform
    std::map<std::uint64_t, PulseClass> overrides;  // dishonest pulses at fixed labels

    void validate() const;
    static AliceSchedule single(const PulseClass& c);
    static AliceSchedule random_bb84(const PulseSpec& source);
};

enum class BasisPolicy { Random, Fixed0, Fixed1 };

struct BobConfig {
    DetectorPair det = DetectorPair::uniform(0.12);
    BasisPair bases{};
    ReportingStrategy strategy = make_strategy_I();
    BasisPolicy policy = BasisPolicy::Random;
};

struct PulseRecord {
    std::uint64_t index = 0;
    int cls = 0;  // -1 for overridden pulses
    int k = 0;
    int beta = 0;
    int c0 = 0;
    int c1 = 0;
    int m = 0;
};

struct Transcript {
    std::vector<PulseRecord> records;  // ordered by pulse index
    std::array<std::uint64_t, 2> pulses_by_basis{};
    std::array<std::uint64_t, 2> reported_by_basis{};
    std::vector<std::array<std::uint64_t, 2>> sent_by_class;
    std::vector<std::array<std::uint64_t, 2>> reported_by_class;
    std::map<int, std::array<std::uint64_t, 2>> reported_by_k;
    std::uint64_t reported = 0;
    std::uint64_t pulses = 0;

    double m1_fraction() const;
};

Transcript run_protocol(const SimConfig& cfg, const AliceSchedule& alice, const BobConfig& bob,
                        bool keep_records = true);

// Alice's attack-I rule: guess beta=0 when Bob reports, beta=1 otherwise.
Estimate attack1_empirical_guess(const Transcript& t);

// ---- attack validations ----

// Failure frequency of the double-photon guess over `runs` protocol runs. The reported
// two-photon |0> count is drawn as Binomial(N, e^{-mu} mu^2 P_beta(1) / 8), which is its exact
// law for independent pulses.
Estimate double_photon_failure_rate(const DoublePhotonParams& p, std::uint64_t runs,
                                    std::uint64_t seed);

Estimate attack2_empirical_guess(std::uint64_t n, double a, std::array<double, 2> p_attack,
                                 std::array<double, 2> p_protocol, std::uint64_t runs,
                                 std::uint64_t seed);

struct CoinFlipConfig {
    int m = 5;
    int k = 1000;
    double eta = 0.5;
    double dark = 0.0;
    double y = 0.8535533905932737;  // (1 + 1/sqrt 2) / 2: wrong-basis photons split evenly
    ReportingStrategy strategy = make_strategy_I();
    std::uint64_t runs = 10000;
    std::uint64_t seed = 1;
};

struct CoinFlipResult {
    Estimate success;
    Estimate abort;
    Estimate no_outcome;
};

// Single clicks yield the clicking detector's outcome; double clicks, when reported, yield a
// uniformly random outcome.
CoinFlipResult run_coinflip_attack(const CoinFlipConfig& cfg);

}  // namespace mqc

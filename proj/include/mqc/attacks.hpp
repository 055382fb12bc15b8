#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "mqc/optics.hpp"

namespace mqc {

struct AttackOutcome {
    double guess_prob = 0.0;      // probability or lower bound on it
    double fail_prob_bound = 0.0; // upper bound on the failure probability
    std::map<std::string, double> intermediates;

    double at(const std::string& key) const { return intermediates.at(key); }
};

double attack1_guess_coherent(double eta, double mu);
double attack1_guess_general(const EventDistribution& events0, const EventDistribution& events1);

AttackOutcome attack2_chernoff(std::uint64_t n, double a, std::array<double, 2> p_attack,
                               std::array<double, 2> p_protocol);

struct DoublePhotonParams {
    double d0 = 1e-5;
    double d1 = 1e-5;
    double eta0 = 0.12;
    double eta1 = 0.08;
    double mu = 0.05;
    std::uint64_t n = 20000000;
};

// Intermediates: P0_1, P1_1, delta, G, E0, E1.
AttackOutcome double_photon_attack(const DoublePhotonParams& p);

double coinflip_attack_success(double s_min, int m);
double coinflip_failure_term(double s_min, int m);
double coinflip_double_click_abort(double s_min, int m);
double coinflip_double_click_success_ceiling(double s_min);

}  // namespace mqc

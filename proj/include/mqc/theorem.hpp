#pragma once

#include <array>
#include <string>
#include <vector>

#include "mqc/optics.hpp"

namespace mqc {

// Variable order: S000, S010, S100, S110, S001, S011, S101, S111 (S_{c0 c1 beta}).
inline constexpr int kStrategyVars = 8;
int strategy_var_index(int c0, int c1, int beta);

// Probe: k photons, all in one qubit state whose projections onto the first vectors of B_0
// and B_1 are q0 and q1. Each row of the system is the report-probability difference
// between beta=1 and beta=0 for one probe.
struct Probe {
    int k = 0;
    double q0 = 1.0;
    double q1 = 1.0;
    std::string label;
};

std::vector<Probe> default_probes(double cos2a);
// Adds three-photon probes built from the same four single-photon states.
std::vector<Probe> extended_probes(double cos2a);

struct ConstraintSystem {
    std::vector<std::array<double, kStrategyVars>> rows;
    std::vector<std::string> labels;
    double eta0 = 0.0;
    double eta1 = 0.0;
    double cos2a = 0.0;
};

ConstraintSystem build_constraints(double eta0, double eta1, double cos2a);
ConstraintSystem build_constraints(double eta0, double eta1, double cos2a,
                                   const std::vector<Probe>& probes);

struct NullspaceResult {
    int dim = 0;
    std::vector<std::array<double, kStrategyVars>> basis;  // orthonormal
    std::vector<double> singular_values;                   // descending
    double condition = 0.0;  // largest / smallest singular value kept in the row space
    bool ill_conditioned = false;
    double max_residual = 0.0;  // max ||M v|| / (||M|| ||v||)
};

inline constexpr double kDefaultRankTol = 1e-9;
inline constexpr double kIllConditioned = 1e12;
inline constexpr double kNearDegenerate = 1e-6;

NullspaceResult solution_space(const ConstraintSystem& sys, double tol = kDefaultRankTol);

enum class SolutionTag { Trivial, EqualEfficiencyFamily, IdenticalBasesFamily, Other };
std::string to_string(SolutionTag tag);

struct SolutionClass {
    SolutionTag tag = SolutionTag::Other;
    int nullspace_dim = 0;
    std::vector<std::array<double, kStrategyVars>> basis_vectors;
    bool near_degenerate = false;
    double all_ones_angle = 0.0;  // angle between all-ones and the nullspace
    std::string diagnostic;
};

SolutionClass classify(const NullspaceResult& sol, double eta0, double eta1, double cos2a);

// Largest principal angle between span(basis) and span(family), in radians.
double subspace_angle(const std::vector<std::array<double, kStrategyVars>>& basis,
                      const std::vector<std::array<double, kStrategyVars>>& family);

std::vector<std::array<double, kStrategyVars>> equal_efficiency_family();
std::vector<std::array<double, kStrategyVars>> identical_bases_family();

}  // namespace mqc

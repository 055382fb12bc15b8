#include "mqc/optics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mqc {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw PreconditionError(what);
}

void check_bit(int beta) { require(beta == 0 || beta == 1, "beta must be 0 or 1"); }

}  // namespace

void QubitState::validate() const {
    require(std::isfinite(rx) && std::isfinite(ry) && std::isfinite(rz),
            "Bloch vector must be finite");
    require(rx * rx + ry * ry + rz * rz <= 1.0 + tol::bloch_norm,
            "Bloch vector must satisfy |r| <= 1");
}

void BasisPair::validate() const {
    require(cos2a > 0.0 && cos2a <= 1.0, "cos2a must lie in (0, 1]");
}

std::array<double, 2> BasisPair::direction_xz(int beta) const {
    if (beta == 0) return {0.0, 1.0};
    // |psi_01> = cos a|0> + sin a|1> has Bloch vector (sin 2a, 0, cos 2a).
    const double c = cos2a;
    return {2.0 * std::sqrt(c * (1.0 - c)), 2.0 * c - 1.0};
}

void DetectorPair::validate() const {
    for (int i = 0; i < 2; ++i)
        for (int b = 0; b < 2; ++b) {
            require(eta[i][b] > 0.0 && eta[i][b] < 1.0, "efficiency must lie in (0, 1)");
            require(d[i][b] >= 0.0 && d[i][b] < 1.0, "dark-count probability must lie in [0, 1)");
        }
}

DetectorPair DetectorPair::uniform(double eta, double dark) {
    return basis_independent(eta, eta, dark, dark);
}

DetectorPair DetectorPair::basis_independent(double eta0, double eta1, double d0, double d1) {
    DetectorPair det;
    det.eta = {{{eta0, eta0}, {eta1, eta1}}};
    det.d = {{{d0, d0}, {d1, d1}}};
    return det;
}

double DetectorPair::eta_min() const {
    return std::min(std::min(eta[0][0], eta[0][1]), std::min(eta[1][0], eta[1][1]));
}

double DetectorPair::eta_max() const {
    return std::max(std::max(eta[0][0], eta[0][1]), std::max(eta[1][0], eta[1][1]));
}

void validate_pulse(const PulseSpec& pulse) {
    if (const auto* f = std::get_if<FixedK>(&pulse)) {
        require(f->k >= 0, "photon number k must be >= 0");
    } else {
        const double mu = std::get<Coherent>(pulse).mu;
        require(std::isfinite(mu) && mu > 0.0, "mean photon number mu must be > 0");
    }
}

std::string describe_pulse(const PulseSpec& pulse) {
    std::ostringstream os;
    if (const auto* f = std::get_if<FixedK>(&pulse))
        os << "k=" << f->k;
    else
        os << "mu=" << std::get<Coherent>(pulse).mu;
    return os.str();
}

double EventDistribution::sum() const { return p[0][0] + p[0][1] + p[1][0] + p[1][1]; }

void EventDistribution::validate(double tolerance) const {
    for (const auto& row : p)
        for (double v : row)
            require(v >= -tolerance && v <= 1.0 + tolerance, "event probability outside [0, 1]");
    require(std::abs(sum() - 1.0) <= tolerance, "event probabilities do not sum to 1");
}

double overlap_q(const QubitState& state, const BasisPair& bases, int beta) {
    check_bit(beta);
    state.validate();
    bases.validate();
    const auto n = bases.direction_xz(beta);
    const double q = 0.5 * (1.0 + state.rx * n[0] + state.rz * n[1]);
    return std::clamp(q, 0.0, 1.0);
}

namespace {

// Inputs: probabilities that D_0 alone / D_1 alone / both stay silent.
EventDistribution from_silences(double silent0, double silent1, double silent_both) {
    EventDistribution e;
    e.p[0][0] = silent_both;
    e.p[0][1] = silent0 - silent_both;
    e.p[1][0] = silent1 - silent_both;
    e.p[1][1] = 1.0 - silent0 - silent1 + silent_both;
    return e;
}

void check_q(double q) { require(q >= 0.0 && q <= 1.0, "q_beta must lie in [0, 1]"); }

}  // namespace

EventDistribution det_probs_fixed_k(const DetectorPair& det, double q_beta, int beta, int k) {
    check_bit(beta);
    check_q(q_beta);
    require(k >= 0, "photon number k must be >= 0");
    det.validate();
    const double e0 = det.eta[0][beta], e1 = det.eta[1][beta];
    const double d0 = det.d[0][beta], d1 = det.d[1][beta];
    const double q = q_beta;
    const double both = (1 - d0) * (1 - d1) * std::pow(q * (1 - e0) + (1 - q) * (1 - e1), k);
    const double silent0 = (1 - d0) * std::pow(1 - q * e0, k);
    const double silent1 = (1 - d1) * std::pow(1 - (1 - q) * e1, k);
    return from_silences(silent0, silent1, both);
}

EventDistribution det_probs_coherent(const DetectorPair& det, double q_beta, int beta, double mu) {
    check_bit(beta);
    check_q(q_beta);
    require(std::isfinite(mu) && mu > 0.0, "mean photon number mu must be > 0");
    det.validate();
    const double e0 = det.eta[0][beta], e1 = det.eta[1][beta];
    const double d0 = det.d[0][beta], d1 = det.d[1][beta];
    const double q = q_beta;
    const double both = (1 - d0) * (1 - d1) * std::exp(-mu * (q * e0 + (1 - q) * e1));
    const double silent0 = (1 - d0) * std::exp(-mu * q * e0);
    const double silent1 = (1 - d1) * std::exp(-mu * (1 - q) * e1);
    return from_silences(silent0, silent1, both);
}

EventDistribution det_probs(const DetectorPair& det, double q_beta, int beta,
                            const PulseSpec& pulse) {
    validate_pulse(pulse);
    if (const auto* f = std::get_if<FixedK>(&pulse)) return det_probs_fixed_k(det, q_beta, beta, f->k);
    return det_probs_coherent(det, q_beta, beta, std::get<Coherent>(pulse).mu);
}

double no_click_prob_general(const DetectorPair& det, const std::vector<double>& routing, int beta,
                             int k) {
    check_bit(beta);
    require(k >= 0, "photon number k must be >= 0");
    require(routing.size() == static_cast<std::size_t>(k) + 1,
            "routing distribution must have k+1 entries");
    det.validate();
    double total = 0.0;
    for (double w : routing) {
        require(w >= 0.0, "routing probabilities must be nonnegative");
        total += w;
    }
    require(std::abs(total - 1.0) <= tol::routing_sum, "routing distribution must sum to 1");
    const double a0 = 1 - det.eta[0][beta], a1 = 1 - det.eta[1][beta];
    double acc = 0.0;
    for (int k0 = 0; k0 <= k; ++k0) acc += routing[k0] * std::pow(a0, k0) * std::pow(a1, k - k0);
    return (1 - det.d[0][beta]) * (1 - det.d[1][beta]) * acc;
}

double qudit_report_prob(double eta, const std::vector<double>& darks, int k) {
    require(eta > 0.0 && eta < 1.0, "efficiency must lie in (0, 1)");
    require(k >= 0, "photon number k must be >= 0");
    double silent = std::pow(1 - eta, k);
    for (double di : darks) {
        require(di >= 0.0 && di < 1.0, "dark-count probability must lie in [0, 1)");
        silent *= 1 - di;
    }
    return 1.0 - silent;
}

}  // namespace mqc

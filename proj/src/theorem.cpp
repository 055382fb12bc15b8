#include "mqc/theorem.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace mqc {

namespace {

using Vec8 = std::array<double, kStrategyVars>;

void require(bool ok, const char* what) {
    if (!ok) throw PreconditionError(what);
}

Eigen::MatrixXd to_columns(const std::vector<Vec8>& vs) {
    Eigen::MatrixXd m(kStrategyVars, static_cast<Eigen::Index>(vs.size()));
    for (std::size_t j = 0; j < vs.size(); ++j)
        for (int i = 0; i < kStrategyVars; ++i) m(i, static_cast<Eigen::Index>(j)) = vs[j][i];
    return m;
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& m) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    return qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
}

Vec8 unit(std::initializer_list<int> idx) {
    Vec8 v{};
    for (int i : idx) v[i] = 1.0;
    return v;
}

}  // namespace

int strategy_var_index(int c0, int c1, int beta) { return 4 * beta + 2 * c0 + c1; }

std::vector<Probe> default_probes(double cos2a) {
    const double c = cos2a;
    return {
        {0, 1.0, 1.0, "vacuum"},
        {1, 1.0, c, "|0>"},
        {1, 0.0, 1.0 - c, "|1>"},
        {1, c, 1.0, "|psi01>"},
        {1, 1.0 - c, 0.0, "|psi11>"},
        {2, 1.0, c, "|00>"},
        {2, c, 1.0, "|psi01 psi01>"},
        {2, 0.0, 1.0 - c, "|11>"},
    };
}

std::vector<Probe> extended_probes(double cos2a) {
    auto probes = default_probes(cos2a);
    const double c = cos2a;
    probes.push_back({2, 1.0 - c, 0.0, "|psi11 psi11>"});
    probes.push_back({3, 1.0, c, "|000>"});
    probes.push_back({3, 0.0, 1.0 - c, "|111>"});
    probes.push_back({3, c, 1.0, "|psi01^3>"});
    probes.push_back({3, 1.0 - c, 0.0, "|psi11^3>"});
    return probes;
}

ConstraintSystem build_constraints(double eta0, double eta1, double cos2a) {
    return build_constraints(eta0, eta1, cos2a, default_probes(cos2a));
}

ConstraintSystem build_constraints(double eta0, double eta1, double cos2a,
                                   const std::vector<Probe>& probes) {
    require(eta0 > 0 && eta0 < 1 && eta1 > 0 && eta1 < 1, "efficiencies must lie in (0, 1)");
    BasisPair{cos2a}.validate();
    const DetectorPair det = DetectorPair::basis_independent(eta0, eta1);
    ConstraintSystem sys;
    sys.eta0 = eta0;
    sys.eta1 = eta1;
    sys.cos2a = cos2a;
    for (const auto& probe : probes) {
        const auto e0 = det_probs_fixed_k(det, probe.q0, 0, probe.k);
        const auto e1 = det_probs_fixed_k(det, probe.q1, 1, probe.k);
        Vec8 row{};
        for (int c0 = 0; c0 < 2; ++c0)
            for (int c1 = 0; c1 < 2; ++c1) {
                row[strategy_var_index(c0, c1, 1)] = e1(c0, c1);
                row[strategy_var_index(c0, c1, 0)] = -e0(c0, c1);
            }
        sys.rows.push_back(row);
        sys.labels.push_back(probe.label);
    }
    return sys;
}

NullspaceResult solution_space(const ConstraintSystem& sys, double tol) {
    require(tol > 0, "tolerance must be positive");
    require(!sys.rows.empty(), "constraint system has no rows");
    const auto n_rows = static_cast<Eigen::Index>(sys.rows.size());
    Eigen::MatrixXd m(std::max<Eigen::Index>(n_rows, kStrategyVars), kStrategyVars);
    m.setZero();
    for (Eigen::Index r = 0; r < n_rows; ++r)
        for (int j = 0; j < kStrategyVars; ++j) m(r, j) = sys.rows[r][j];

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    NullspaceResult out;
    out.singular_values.assign(sv.data(), sv.data() + sv.size());
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * smax) ++rank;
    out.dim = kStrategyVars - rank;
    out.condition = rank > 0 ? smax / sv(rank - 1) : INFINITY;
    out.ill_conditioned = out.condition > kIllConditioned;
    const Eigen::MatrixXd& v = svd.matrixV();
    for (int j = rank; j < kStrategyVars; ++j) {
        Vec8 b{};
        for (int i = 0; i < kStrategyVars; ++i) b[i] = v(i, j);
        out.basis.push_back(b);
        const double res = (m * v.col(j)).norm() / (smax > 0 ? smax : 1.0);
        out.max_residual = std::max(out.max_residual, res);
    }
    return out;
}

std::string to_string(SolutionTag tag) {
    switch (tag) {
        case SolutionTag::Trivial: return "Trivial";
        case SolutionTag::EqualEfficiencyFamily: return "EqualEfficiencyFamily";
        case SolutionTag::IdenticalBasesFamily: return "IdenticalBasesFamily";
        case SolutionTag::Other: return "Other";
    }
    return "Other";
}

std::vector<Vec8> equal_efficiency_family() {
    // All-ones plus a free S000 = S001 direction.
    return {unit({0, 1, 2, 3, 4, 5, 6, 7}), unit({0, 4})};
}

std::vector<Vec8> identical_bases_family() {
    // S_{c0c1,0} = S_{c0c1,1} for (c0,c1) != (1,1); S110 and S111 free.
    return {unit({0, 4}), unit({1, 5}), unit({2, 6}), unit({3}), unit({7})};
}

double subspace_angle(const std::vector<Vec8>& basis, const std::vector<Vec8>& family) {
    if (basis.size() != family.size() || basis.empty()) return M_PI / 2;
    const Eigen::MatrixXd a = orthonormalize(to_columns(basis));
    const Eigen::MatrixXd b = orthonormalize(to_columns(family));
    const Eigen::MatrixXd resid = a - b * (b.transpose() * a);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(resid);
    const double s = std::min(1.0, svd.singularValues()(0));
    return std::asin(s);
}

SolutionClass classify(const NullspaceResult& sol, double eta0, double eta1, double cos2a) {
    require(static_cast<int>(sol.basis.size()) == sol.dim, "nullspace basis size must equal its dimension");
    SolutionClass out;
    out.nullspace_dim = sol.dim;
    out.basis_vectors = sol.basis;
    out.near_degenerate = std::abs(eta0 - eta1) < kNearDegenerate || std::abs(1.0 - cos2a) < kNearDegenerate;

    const Vec8 ones = unit({0, 1, 2, 3, 4, 5, 6, 7});
    if (sol.dim == 0) {
        out.all_ones_angle = M_PI / 2;
    } else {
        const Eigen::MatrixXd n = to_columns(sol.basis);
        Eigen::VectorXd u(kStrategyVars);
        for (int i = 0; i < kStrategyVars; ++i) u(i) = ones[i] / std::sqrt(8.0);
        const Eigen::VectorXd proj = n * (n.transpose() * u);
        out.all_ones_angle = std::atan2((u - proj).norm(), proj.norm());
    }

    constexpr double kAngleTol = 1e-6;
    if (sol.dim == 1 && out.all_ones_angle < kAngleTol) {
        out.tag = SolutionTag::Trivial;
    } else if (sol.dim == 2 && subspace_angle(sol.basis, equal_efficiency_family()) < kAngleTol) {
        out.tag = SolutionTag::EqualEfficiencyFamily;
    } else if (sol.dim == 5 && subspace_angle(sol.basis, identical_bases_family()) < kAngleTol) {
        out.tag = SolutionTag::IdenticalBasesFamily;
    } else {
        out.tag = SolutionTag::Other;
        std::ostringstream os;
        os << "UNEXPECTED SOLUTION SPACE: dim=" << sol.dim << " at eta0=" << eta0
           << " eta1=" << eta1 << " cos2a=" << cos2a << " (all-ones angle "
           << out.all_ones_angle << " rad, condition " << sol.condition << ")";
        out.diagnostic = os.str();
    }
    return out;
}

}  // namespace mqc

#include "margraph/gaussian.hpp"

#include <cmath>

#include "margraph/errors.hpp"

namespace margraph {

namespace {

void require_members(const GaussianModel& m, const VarSet& a, const char* what) {
    for (VarId v : a)
        if (v >= m.size()) throw InvalidInput(std::string(what) + ": unknown variable " + std::to_string(v));
}

Eigen::VectorXd restrict_vector(const Eigen::VectorXd& v, const VarSet& a) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) out(static_cast<Eigen::Index>(i)) = v(static_cast<Eigen::Index>(a[i]));
    return out;
}

}  // namespace

GaussianModel::GaussianModel(Eigen::VectorXd mean, Eigen::MatrixXd precision, std::vector<std::string> labels)
    : mean_(std::move(mean)), precision_(std::move(precision)), labels_(std::move(labels)) {
    const auto n = mean_.size();
    if (n == 0) throw InvalidInput("gaussian model needs at least one variable");
    if (precision_.rows() != n || precision_.cols() != n)
        throw InvalidInput("precision must be " + std::to_string(n) + "x" + std::to_string(n));
    if (!mean_.allFinite() || !precision_.allFinite()) throw InvalidInput("non-finite entry in gaussian model");
    const double scale = std::max(1.0, precision_.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (std::abs(precision_(i, j) - precision_(j, i)) > 1e-12 * scale)
                throw InvalidInput("precision not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    Eigen::LLT<Eigen::MatrixXd> llt(precision_);
    if (llt.info() != Eigen::Success) throw InvalidInput("precision is not positive definite (Cholesky failed)");
    if (labels_.empty()) {
        for (Eigen::Index i = 0; i < n; ++i) labels_.push_back("X" + std::to_string(i + 1));
    } else if (labels_.size() != static_cast<std::size_t>(n)) {
        throw InvalidInput("label count does not match dimension");
    }
}

VarSet GaussianModel::all() const {
    std::vector<VarId> ids(size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    return VarSet(std::move(ids));
}

Graph GaussianModel::pattern_graph() const {
    EdgeSet edges;
    for (Eigen::Index i = 0; i < precision_.rows(); ++i)
        for (Eigen::Index j = i + 1; j < precision_.cols(); ++j)
            if (precision_(i, j) != 0.0) edges.emplace(static_cast<VarId>(i), static_cast<VarId>(j));
    return Graph(all(), edges);
}

Eigen::MatrixXd block(const Eigen::MatrixXd& m, const VarSet& rows, const VarSet& cols) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                m(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(cols[j]));
    return out;
}

Eigen::MatrixXd innovation_matrix(const GaussianModel& m, const VarSet& a) {
    require_members(m, a, "innovation_matrix");
    if (a.empty()) throw InvalidInput("innovation_matrix: kept set must be non-empty");
    const VarSet z = m.all().minus(a);
    const auto na = static_cast<Eigen::Index>(a.size());
    if (z.empty()) return Eigen::MatrixXd::Zero(na, na);

    const Eigen::MatrixXd uzz = block(m.precision(), z, z);
    const Eigen::MatrixXd uza = block(m.precision(), z, a);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(uzz);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
        throw InvalidInput("eliminated precision block is singular");
    Eigen::MatrixXd gamma = uza.transpose() * ldlt.solve(uza);
    // exact symmetry for downstream comparisons
    return 0.5 * (gamma + gamma.transpose());
}

GaussianModel marginal_precision(const GaussianModel& m, const VarSet& a) {
    const Eigen::MatrixXd gamma = innovation_matrix(m, a);
    Eigen::MatrixXd p = block(m.precision(), a, a) - gamma;
    std::vector<std::string> labels;
    for (VarId v : a) labels.push_back(m.labels()[v]);
    return GaussianModel(restrict_vector(m.mean(), a), std::move(p), std::move(labels));
}

double pairwise_innovation(const GaussianModel& m, const VarSet& a, VarId i, VarId j) {
    require_members(m, a, "pairwise_innovation");
    if (!a.contains(i) || !a.contains(j)) throw InvalidInput("pairwise_innovation: i and j must be kept variables");
    if (i == j) throw InvalidInput("pairwise_innovation: i and j must differ");
    const VarSet z = m.all().minus(a);
    if (z.empty()) return 0.0;
    const auto& u = m.precision();
    const auto ii = static_cast<Eigen::Index>(i);
    const auto jj = static_cast<Eigen::Index>(j);

    std::vector<std::size_t> ri, sj;  // positions in z of neighbours of i and j
    for (std::size_t k = 0; k < z.size(); ++k) {
        const auto zk = static_cast<Eigen::Index>(z[k]);
        if (u(ii, zk) != 0.0) ri.push_back(k);
        if (u(zk, jj) != 0.0) sj.push_back(k);
    }
    if (ri.empty() || sj.empty()) return 0.0;

    Eigen::LDLT<Eigen::MatrixXd> ldlt(block(u, z, z));
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
        throw InvalidInput("eliminated precision block is singular");
    double total = 0.0;
    const auto nz = static_cast<Eigen::Index>(z.size());
    for (std::size_t s : sj) {
        // column s of ρ
        Eigen::VectorXd unit = Eigen::VectorXd::Zero(nz);
        unit(static_cast<Eigen::Index>(s)) = 1.0;
        const Eigen::VectorXd rho_s = ldlt.solve(unit);
        const double u_sj = u(static_cast<Eigen::Index>(z[s]), jj);
        for (std::size_t r : ri)
            total += rho_s(static_cast<Eigen::Index>(r)) * u(ii, static_cast<Eigen::Index>(z[r])) * u_sj;
    }
    return total;
}

Graph gaussian_marginal_graph(const GaussianModel& m, const VarSet& a, double rel_tol) {
    const GaussianModel marg = marginal_precision(m, a);
    const auto& p = marg.precision();
    const double threshold = rel_tol * p.cwiseAbs().maxCoeff();
    EdgeSet edges;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (std::abs(p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) > threshold)
                edges.emplace(a[i], a[j]);
    return Graph(a, edges);
}

}  // namespace margraph

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "margraph/graph.hpp"

namespace margraph {

/// Multivariate normal given by its mean and precision (inverse covariance).
/// The precision must be symmetric and positive definite; the constructor
/// checks both.
class GaussianModel {
public:
    GaussianModel(Eigen::VectorXd mean, Eigen::MatrixXd precision, std::vector<std::string> labels = {});

    [[nodiscard]] const Eigen::VectorXd& mean() const noexcept { return mean_; }
    [[nodiscard]] const Eigen::MatrixXd& precision() const noexcept { return precision_; }
    [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(mean_.size()); }
    [[nodiscard]] VarSet all() const;

    /// Graph with an edge wherever the precision has an exactly non-zero
    /// off-diagonal entry.
    [[nodiscard]] Graph pattern_graph() const;

private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd precision_;
    std::vector<std::string> labels_;
};

/// Submatrix on (rows, cols), both given as sorted id sets.
[[nodiscard]] Eigen::MatrixXd block(const Eigen::MatrixXd& m, const VarSet& rows, const VarSet& cols);

/// Innovation matrix Υ_{A,Z} Υ_{Z,Z}^{-1} Υ_{Z,A} with Z = V \ a, indexed by
/// the members of `a` in order.
[[nodiscard]] Eigen::MatrixXd innovation_matrix(const GaussianModel& m, const VarSet& a);

/// Marginal model on `a`: restricted mean and Schur-complement precision.
/// Labels of the result are those of `a`.
[[nodiscard]] GaussianModel marginal_precision(const GaussianModel& m, const VarSet& a);

/// Γ_ij accumulated over eliminated neighbours r of i and s of j:
/// Σ ρ_rs Υ_ir Υ_sj with ρ = Υ_{Z,Z}^{-1}. i and j are model ids in `a`.
[[nodiscard]] double pairwise_innovation(const GaussianModel& m, const VarSet& a, VarId i, VarId j);

/// Graph on `a` with an edge wherever |marginal precision| exceeds
/// rel_tol × (largest |entry| of the marginal precision).
[[nodiscard]] Graph gaussian_marginal_graph(const GaussianModel& m, const VarSet& a, double rel_tol = 1e-9);

}  // namespace margraph

#include <doctest.h>

#include <cmath>

#include "margraph/errors.hpp"
#include "margraph/gaussian.hpp"
#include "margraph/graph_marginalize.hpp"
#include "margraph/model_io.hpp"
#include "support/random_models.hpp"

using namespace margraph;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// X_i -> id i-1
constexpr VarId x(int i) { return static_cast<VarId>(i - 1); }

const VarSet kDamageEliminated{x(5), x(7), x(13), x(14), x(15), x(16), x(17), x(22), x(23)};

Graph damage_graph() { return *io::load_model(testsupport::fixture("damage_graph.json")).graph; }

VarSet damage_keep() { return damage_graph().vertices().minus(kDamageEliminated); }

Eigen::Index pos(const VarSet& s, VarId v) { return static_cast<Eigen::Index>(s.position(v)); }

}  // namespace

TEST_CASE("model validation") {
    CHECK_NOTHROW(GaussianModel(VectorXd::Zero(2), MatrixXd::Identity(2, 2)));
    CHECK_THROWS_AS(GaussianModel(VectorXd::Zero(3), MatrixXd::Identity(2, 2)), InvalidInput);
    MatrixXd asym = MatrixXd::Identity(2, 2);
    asym(0, 1) = 0.1;
    CHECK_THROWS_AS(GaussianModel(VectorXd::Zero(2), asym), InvalidInput);
    MatrixXd indef{{1.0, 2.0}, {2.0, 1.0}};
    CHECK_THROWS_AS(GaussianModel(VectorXd::Zero(2), indef), InvalidInput);
    MatrixXd nan = MatrixXd::Identity(2, 2);
    nan(1, 1) = std::nan("");
    CHECK_THROWS_AS(GaussianModel(VectorXd::Zero(2), nan), InvalidInput);
    CHECK(GaussianModel(VectorXd::Zero(2), MatrixXd::Identity(2, 2)).labels() == std::vector<std::string>{"X1", "X2"});
}

TEST_CASE("identity precision stays diagonal") {
    const auto model = io::load_model(testsupport::fixture("identity_gaussian.json"));
    const GaussianModel& m = *model.gaussian;
    const VarSet a{0, 2};
    const auto marg = marginal_precision(m, a);
    CHECK(marg.precision().isApprox(MatrixXd::Identity(2, 2)));
    CHECK(marg.mean() == VectorXd{{1.0, 0.5}});
    CHECK(marg.labels() == std::vector<std::string>{"Y1", "Y3"});
    CHECK(innovation_matrix(m, a).isZero(0.0));
    CHECK(gaussian_marginal_graph(m, a).edges().empty());
}

TEST_CASE("keeping everything returns the model") {
    std::mt19937_64 rng(1);
    const MatrixXd p = testsupport::random_dense_spd(rng, 5);
    const GaussianModel m(VectorXd::LinSpaced(5, 0, 4), p);
    CHECK(marginal_precision(m, m.all()).precision() == p);
    CHECK(innovation_matrix(m, m.all()).isZero(0.0));
    CHECK_THROWS_AS((void)marginal_precision(m, VarSet{}), InvalidInput);
    CHECK_THROWS_AS((void)marginal_precision(m, VarSet{0, 7}), InvalidInput);
}

TEST_CASE("block diagonal: no innovation across blocks") {
    std::mt19937_64 rng(2);
    MatrixXd p = MatrixXd::Zero(6, 6);
    p.topLeftCorner(3, 3) = testsupport::random_dense_spd(rng, 3);
    p.bottomRightCorner(3, 3) = testsupport::random_dense_spd(rng, 3);
    const GaussianModel m(VectorXd::Zero(6), p);
    const VarSet a{0, 1, 3};
    const MatrixXd gamma = innovation_matrix(m, a);
    CHECK(gamma(0, 2) == 0.0);
    CHECK(gamma(1, 2) == 0.0);
    CHECK(gamma(2, 2) == doctest::Approx((p.block(3, 4, 1, 2) * p.block(4, 4, 2, 2).inverse() * p.block(4, 3, 2, 1))(0, 0)));
}

TEST_CASE("three-variable chain") {
    MatrixXd p{{2.0, 0.5, 0.0}, {0.5, 1.5, -0.4}, {0.0, -0.4, 1.2}};
    const GaussianModel m(VectorXd::Zero(3), p);
    const VarSet a{0, 2};
    const MatrixXd gamma = innovation_matrix(m, a);
    CHECK(gamma(0, 1) == doctest::Approx(0.5 * -0.4 / 1.5).epsilon(1e-14));
    CHECK(pairwise_innovation(m, a, 0, 2) == doctest::Approx(0.5 * -0.4 / 1.5).epsilon(1e-14));
    CHECK(gaussian_marginal_graph(m, a).edges() == EdgeSet{{0, 2}});
    CHECK_THROWS_AS((void)pairwise_innovation(m, a, 0, 1), InvalidInput);
}

TEST_CASE("Schur complement inverts the covariance block") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = static_cast<Eigen::Index>(2 + trial % 12);
        const MatrixXd p = trial % 2 ? testsupport::random_dense_spd(rng, n)
                                     : testsupport::random_spd(rng, testsupport::random_graph(rng, n, 0.3));
        const GaussianModel m(VectorXd::Zero(n), p);
        const VarSet a = testsupport::random_nonempty_subset(rng, m.all(), 0.5);
        const auto marg = marginal_precision(m, a);
        const MatrixXd sigma_a = block(p.inverse(), a, a);
        const double err = (marg.precision() - sigma_a.inverse()).cwiseAbs().maxCoeff() /
                           std::max(1.0, marg.precision().cwiseAbs().maxCoeff());
        CHECK(err <= 1e-8);
        CHECK((block(p, a, a) - innovation_matrix(m, a) - marg.precision()).cwiseAbs().maxCoeff() <= 1e-12);
        // still a valid model
        CHECK_NOTHROW(GaussianModel(marg.mean(), marg.precision()));
        // pairwise formula agrees with the matrix
        const MatrixXd gamma = innovation_matrix(m, a);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i + 1; j < a.size(); ++j)
                CHECK(std::abs(pairwise_innovation(m, a, a[i], a[j]) -
                               gamma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) <= 1e-10);
    }
}

TEST_CASE("marginal Gaussian graph lies inside the graph marginal") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = static_cast<std::size_t>(3 + trial % 12);
        const Graph pattern = testsupport::random_graph(rng, n, 0.25);
        const GaussianModel m(VectorXd::Zero(static_cast<Eigen::Index>(n)), testsupport::random_spd(rng, pattern));
        CHECK(m.pattern_graph() == pattern);
        const VarSet a = testsupport::random_nonempty_subset(rng, m.all(), 0.5);
        const Graph gg = gaussian_marginal_graph(m, a);
        const Graph gm = marginalize_graph(pattern, a);
        for (const auto& e : gg.edges()) CHECK(gm.edges().contains(e));
    }
}

TEST_CASE("damage model: the X2-X8 innovation never vanishes") {
    const Graph g = damage_graph();
    REQUIRE(g.vertices().size() == 24);
    REQUIRE(g.edges().size() == 28);
    const VarSet a = damage_keep();
    EdgeSet expected = subgraph(g, a).edges();
    expected.emplace(x(2), x(8));
    CHECK(marginalize_graph(g, a).edges() == expected);

    std::mt19937_64 rng(20261015);
    for (int trial = 0; trial < 200; ++trial) {
        const GaussianModel m(VectorXd::Zero(24), testsupport::random_spd(rng, g));
        const double g28 = pairwise_innovation(m, a, x(2), x(8));
        CHECK(std::abs(g28) > 1e-12);
        CHECK(gaussian_marginal_graph(m, a).adjacent(x(2), x(8)));

        // only the 5-7 path contributes
        const MatrixXd& p = m.precision();
        const MatrixXd rho = block(p, kDamageEliminated, kDamageEliminated).inverse();
        const double r57 = rho(pos(kDamageEliminated, x(5)), pos(kDamageEliminated, x(7)));
        CHECK(g28 == doctest::Approx(r57 * p(x(2), x(5)) * p(x(7), x(8))).epsilon(1e-10));

        // closed form for ρ57 on the tree-shaped block
        const double det = block(p, kDamageEliminated, kDamageEliminated).determinant();
        double diag = 1.0;
        for (int i : {13, 14, 15, 16, 17, 22, 23}) diag *= p(x(i), x(i));
        CHECK(r57 == doctest::Approx(-p(x(5), x(7)) * diag / det).epsilon(1e-10));
    }
}

TEST_CASE("damage model: tuned X2-X4 entry removes that edge") {
    const auto model = io::load_model(testsupport::fixture("damage_gaussian_tuned.json"));
    const GaussianModel& m = *model.gaussian;
    const VarSet a = damage_keep();
    CHECK(m.pattern_graph().adjacent(x(2), x(4)));
    const Graph gg = gaussian_marginal_graph(m, a);
    CHECK_FALSE(gg.adjacent(x(2), x(4)));
    CHECK(gg.adjacent(x(4), x(8)));
    CHECK(gg.adjacent(x(2), x(8)));
    CHECK(marginalize_graph(m.pattern_graph(), a).adjacent(x(2), x(4)));

    const auto plain = io::load_model(testsupport::fixture("damage_gaussian.json"));
    CHECK(gaussian_marginal_graph(*plain.gaussian, a) == marginalize_graph(plain.gaussian->pattern_graph(), a));
}

#include <doctest.h>

#include <cmath>

#include "margraph/errors.hpp"
#include "margraph/graph_marginalize.hpp"
#include "margraph/hypergraph_marginalize.hpp"
#include "margraph/model_io.hpp"
#include "margraph/oracle.hpp"
#include "support/random_models.hpp"

using namespace margraph;

namespace {

struct Alphas {
    double a12, a23, a45, a56;
    std::optional<double> a13;
};

// V1..V6 -> ids 0..5
Potential two_paths(const Alphas& p) {
    Potential u(VariableTable::binary(6));
    u.add(VarSet{1}, [&](auto v) { return p.a12 * v[0]; });
    u.add(VarSet{0, 1}, [&](auto v) { return p.a12 * v[0] * v[1]; });
    u.add(VarSet{1, 2}, [&](auto v) { return p.a23 * v[0] * v[1]; });
    u.add(VarSet{3, 4}, [&](auto v) { return p.a45 * v[0] * v[1]; });
    u.add(VarSet{4, 5}, [&](auto v) { return p.a56 * v[0] * v[1]; });
    if (p.a13) u.add(VarSet{0, 2}, [&](auto v) { return *p.a13 * v[0] * v[1]; });
    return u;
}

double cancelling_a13(double a12, double a23) {
    return std::log(std::exp(-2 * a12 - a23) + 1) - std::log(std::exp(-2 * a12) + 1) -
           std::log(std::exp(-a23 - a12) + 1) + std::log(std::exp(-a12) + 1);
}

const VarSet kA{0, 2, 4};

const InteractionTable& innovation_on(const std::vector<Innovation>& inn, const VarSet& s) {
    for (const auto& i : inn)
        if (i.scope == s) return i.table;
    FAIL("missing innovation");
    throw;
}

void check_table(const InteractionTable& t, const std::function<double(double, double)>& f, double tol = 1e-12) {
    if (t.scope().size() == 1) {
        for (int x = 0; x < 2; ++x) CHECK(std::abs(t.values()[x] - f(x, 0)) <= tol);
    } else {
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) CHECK(std::abs(t.values()[2 * x + y] - f(x, y)) <= tol);
    }
}

void check_against_oracle(const Potential& u, const VarSet& a, double tol) {
    const auto report = marginalize_hypergraph(PotentialFamily{u}, a);
    const Potential& ua = report.marginal_potentials.front();
    const auto marg = oracle::marginal_table(oracle::joint_table(u), a);
    CHECK(oracle::proportionality_error(marg, ua) <= tol);
    const Potential ref = oracle::normalized_potential_from_table(marg);
    CHECK(report.marginal_hypergraph == hypergraph_of(ref));
    for (const auto& [scope, t] : ref.tables()) {
        const auto* got = ua.find(scope);
        REQUIRE(got != nullptr);
        for (std::size_t i = 0; i < t.size(); ++i) CHECK(std::abs(got->values()[i] - t.values()[i]) <= tol);
    }
}

}  // namespace

TEST_CASE("two-path potential: component sums") {
    const Alphas p{0.8, -1.3, 0.6, 1.7, {}};
    const Potential u = two_paths(p);

    const auto t1 = component_potential(u, VarSet{1});
    CHECK(t1.scope() == VarSet{0, 2});
    check_table(t1, [&](double v1, double v3) { return -std::log(1 + std::exp(-p.a12 * v1 - p.a12 - p.a23 * v3)); });

    const auto t2 = component_potential(u, VarSet{3});
    CHECK(t2.scope() == VarSet{4});
    check_table(t2, [&](double v5, double) { return -std::log(1 + std::exp(-p.a45 * v5)); });

    const auto agg = boundary_aggregate(u, {VarSet{3}, VarSet{5}}, VarSet{4});
    check_table(agg, [&](double v5, double) {
        return -std::log(1 + std::exp(-p.a45 * v5)) - std::log(1 + std::exp(-p.a56 * v5));
    });

    CHECK_THROWS_AS((void)component_potential(u, VarSet{1}, VarSet{0}), InvalidInput);
}

TEST_CASE("two-path potential: innovations in closed form") {
    for (const Alphas p : {Alphas{1, 1, 1, 1, {}}, Alphas{0.8, -1.3, 0.6, 1.7, {}}, Alphas{-2.5, 0.4, -0.9, 3.0, {}}}) {
        const Potential u = two_paths(p);
        const auto inn = innovations(u, kA);
        REQUIRE(inn.size() == 4);
        check_table(innovation_on(inn, VarSet{0}), [&](double v1, double) {
            return -std::log(std::exp(-p.a12 * v1 - p.a12) + 1) + std::log(std::exp(-p.a12) + 1);
        });
        check_table(innovation_on(inn, VarSet{2}), [&](double v3, double) {
            return -std::log(std::exp(-p.a23 * v3 - p.a12) + 1) + std::log(std::exp(-p.a12) + 1);
        });
        check_table(innovation_on(inn, VarSet{0, 2}), [&](double v1, double v3) {
            return -std::log(std::exp(-p.a12 * v1 - p.a23 * v3 - p.a12) + 1) +
                   std::log(std::exp(-p.a12 * v1 - p.a12) + 1) + std::log(std::exp(-p.a23 * v3 - p.a12) + 1) -
                   std::log(std::exp(-p.a12) + 1);
        });
        check_table(innovation_on(inn, VarSet{4}), [&](double v5, double) {
            return -std::log(std::exp(-p.a45 * v5) + 1) + std::log(2.0) - std::log(std::exp(-p.a56 * v5) + 1) +
                   std::log(2.0);
        });

        const auto r = marginalize_hypergraph(PotentialFamily{u}, kA);
        CHECK(r.hypergraph == Hypergraph{{1}, {0, 1}, {1, 2}, {3, 4}, {4, 5}});
        CHECK(r.boundary_hypergraph == Hypergraph{{0, 2}, {4}});
        CHECK(r.marginal_hypergraph == Hypergraph{{0}, {2}, {0, 2}, {4}});
        CHECK(r.added == r.marginal_hypergraph);
        CHECK(r.restricted.empty());
        CHECK(r.marginal_graph.edges() == EdgeSet{{0, 2}});
        CHECK_FALSE(r.graphically_collapsible);
        CHECK_FALSE(r.parametrically_collapsible);
    }
}

TEST_CASE("two-path potential: marginal graph agrees with the graph operator") {
    const Potential u = two_paths({1, 1, 1, 1, {}});
    const auto r = marginalize_hypergraph(PotentialFamily{u}, kA);
    const Graph g = marginalize_graph(induced_graph(r.hypergraph, u.variables().all()), kA);
    CHECK(r.marginal_graph == g);
}

TEST_CASE("interaction on V1,V3 that survives") {
    const Alphas p{0.8, -1.3, 0.6, 1.7, 0.25};
    const auto r = marginalize_hypergraph(PotentialFamily{two_paths(p)}, kA);
    CHECK(r.restricted == Hypergraph{{0, 2}});
    CHECK(r.marginal_hypergraph == Hypergraph{{0}, {2}, {0, 2}, {4}});
    CHECK(r.removed.empty());
    CHECK(r.marginal_graph.edges() == EdgeSet{{0, 2}});
    CHECK(r.graphically_collapsible);
    CHECK_FALSE(r.parametrically_collapsible);
    const auto* t = r.marginal_potentials.front().find(VarSet{0, 2});
    REQUIRE(t != nullptr);
    const double v13 = -std::log(std::exp(-2 * p.a12 - p.a23) + 1) + std::log(std::exp(-2 * p.a12) + 1) +
                       std::log(std::exp(-p.a23 - p.a12) + 1) - std::log(std::exp(-p.a12) + 1);
    CHECK(std::abs(t->values()[3] - (v13 + *p.a13)) <= 1e-12);
}

TEST_CASE("interaction on V1,V3 that cancels") {
    for (auto [a12, a23] : {std::pair{1.0, 1.0}, std::pair{0.5, -1.5}, std::pair{-2.0, 0.8}}) {
        const Potential u = two_paths({a12, a23, 1.0, -0.7, cancelling_a13(a12, a23)});
        const auto r = marginalize_hypergraph(PotentialFamily{u}, kA);
        CHECK(r.removed == Hypergraph{{0, 2}});
        CHECK(r.marginal_hypergraph == Hypergraph{{0}, {2}, {4}});
        CHECK(r.marginal_graph.edges().empty());
        CHECK_FALSE(r.graphically_collapsible);
        CHECK(r.marginal_potentials.front().find(VarSet{0, 2}) == nullptr);
        CHECK(r.marginal_potentials.front().size() == 3);
    }
}

TEST_CASE("family on the cancelling surface") {
    const auto model = io::load_model(testsupport::fixture("two_paths_cancelling_family.json"));
    const auto r = marginalize_hypergraph(*model.family, kA);
    CHECK(r.marginal_potentials.size() == 3);
    CHECK(r.removed == Hypergraph{{0, 2}});
    CHECK(r.marginal_hypergraph == Hypergraph{{0}, {2}, {4}});

    // one generic member keeps the edge for the whole family
    std::vector<Potential> members = model.family->members();
    Potential generic(members.front().variables_ptr());
    const Potential source = two_paths({1, 1, 1, 1, 1.0});
    for (const auto& [s, t] : source.tables()) generic.add(t);
    members.push_back(std::move(generic));
    const auto r2 = marginalize_hypergraph(PotentialFamily(members), kA);
    CHECK(r2.removed.empty());
    CHECK(r2.marginal_hypergraph.contains(VarSet{0, 2}));
}

TEST_CASE("keeping every variable changes nothing") {
    std::mt19937_64 rng(5);
    const Potential u = testsupport::random_normalized_binary(rng, 7, 8);
    const auto r = marginalize_hypergraph(PotentialFamily{u}, u.variables().all());
    CHECK(r.member_innovations.front().empty());
    CHECK(r.marginal_hypergraph == hypergraph_of(u));
    CHECK(r.graphically_collapsible);
    CHECK(r.parametrically_collapsible);
    CHECK(r.ordering_condition);
    for (const auto& [s, t] : u.tables()) CHECK(r.marginal_potentials.front().find(s)->values() == t.values());
}

TEST_CASE("eliminating an isolated block") {
    const auto model = io::load_model(testsupport::fixture("isolated_elimination.json"));
    const Potential& u = model.family->members().front();
    const VarSet a{0, 1};
    const auto r = marginalize_hypergraph(*model.family, a);
    CHECK(r.member_innovations.front().empty());
    CHECK(r.marginal_hypergraph == Hypergraph{{0}, {0, 1}});
    CHECK(r.parametrically_collapsible);
    CHECK(r.graphically_collapsible);
    check_against_oracle(u, a, 1e-9);
}

TEST_CASE("precondition and limits") {
    Potential raw(VariableTable::binary(3));
    raw.add(VarSet{0, 1}, [](auto v) { return 1.0 + v[0]; });
    CHECK_THROWS_AS((void)innovations(raw, VarSet{0}), PreconditionError);
    CHECK_THROWS_AS((void)marginalize_hypergraph(PotentialFamily{raw}, VarSet{0}), PreconditionError);

    const Potential ok = normalize_potential(raw);
    CHECK_THROWS_AS((void)marginalize_hypergraph(PotentialFamily{ok}, VarSet{0, 9}), InvalidInput);

    Potential big(VariableTable::binary(30));
    for (VarId v = 0; v + 1 < 30; ++v) big.add(VarSet{v, v + 1}, [](auto x) { return 0.3 * x[0] * x[1]; });
    CHECK_THROWS_AS((void)marginalize_hypergraph(PotentialFamily{big}, VarSet{0, 29}), ResourceLimit);
}

TEST_CASE("ternary chain against the oracle") {
    const auto model = io::load_model(testsupport::fixture("ternary_chain.json"));
    const Potential u = normalize_potential(model.family->members().front());
    check_against_oracle(u, VarSet{0, 2}, 1e-9);
    check_against_oracle(u, VarSet{1}, 1e-9);
}

TEST_CASE("random models against the oracle") {
    std::mt19937_64 rng(20261015);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 3 + trial % 8;
        const Potential u = trial % 3 == 0
                                ? normalize_potential(testsupport::random_dense_potential(rng, n, 2 + trial % 5, true))
                                : testsupport::random_normalized_binary(rng, n, 2 + trial % 7);
        const VarSet a = testsupport::random_nonempty_subset(rng, u.variables().all(), 0.5);
        check_against_oracle(u, a, 1e-9);
    }
}

TEST_CASE("structural properties of the marginal hypergraph") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 3 + trial % 10;
        const Potential u = testsupport::random_normalized_binary(rng, n, 2 + trial % 9);
        const VarSet a = testsupport::random_nonempty_subset(rng, u.variables().all(), 0.5);
        const auto r = marginalize_hypergraph(PotentialFamily{u}, a);

        for (const auto& p : r.marginal_potentials) CHECK(is_normalized(p));
        // new scopes sit inside some boundary
        CHECK(precedes(r.added, r.boundary_hypergraph));
        for (const auto& e : r.marginal_hypergraph) CHECK(a.contains_all(e));
        // bounded by the graph algorithm
        const Graph g = marginalize_graph(induced_graph(r.hypergraph, u.variables().all()), a);
        for (const auto& e : r.marginal_graph.edges()) CHECK(g.edges().contains(e));
        CHECK(r.marginal_hypergraph == r.kept.unite(r.added));
        CHECK(r.kept == r.restricted.minus(r.removed));
        CHECK(r.graphically_collapsible == (r.marginal_graph == r.restricted_graph));
        CHECK(r.parametrically_collapsible == r.member_innovations.front().empty());
    }
}

#include "margraph/commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "margraph/errors.hpp"
#include "margraph/graph_marginalize.hpp"
#include "margraph/hypergraph_marginalize.hpp"
#include "margraph/oracle.hpp"

namespace margraph::cli {

using nlohmann::ordered_json;

namespace {

constexpr double kGaussianRelTolerance = 1e-9;
constexpr double kRoundTripTolerance = 1e-9;

VarSet resolve_keep(const VariableTable& vars, const CommandOptions& opts) {
    if (opts.keep.empty()) throw InvalidInput("subset must be non-empty (--keep)");
    return vars.resolve(opts.keep);
}

ordered_json header(const char* command, const io::ModelFile& model, const VarSet& keep,
                    const CommandOptions& opts) {
    ordered_json doc;
    doc["format_version"] = io::kFormatVersion;
    doc["command"] = command;
    ordered_json in;
    in["model"] = opts.model_path;
    in["kind"] = io::to_string(model.kind);
    in["variables"] = io::labels_json(*model.variables, model.variables->all());
    in["keep"] = io::labels_json(*model.variables, keep);
    if (model.family) in["members"] = model.family->size();
    doc["input"] = std::move(in);
    return doc;
}

std::vector<double> flatten(const Eigen::MatrixXd& m) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
    return out;
}

// Family with every member normalized; non-normalized input is normalized
// with a notice, or rejected under --strict.
PotentialFamily prepared_family(const io::ModelFile& model, const CommandOptions& opts, CommandResult& res,
                                double tol) {
    if (!model.family) throw InvalidInput("expected a potential or potential_family model");
    std::vector<Potential> members;
    for (std::size_t i = 0; i < model.family->size(); ++i) {
        const Potential& m = model.family->members()[i];
        if (is_normalized(m)) {
            members.push_back(m);
            continue;
        }
        if (opts.strict) throw PreconditionError("member " + std::to_string(i) + " is not normalized (--strict)");
        res.notices.push_back("member " + std::to_string(i) + " is not normalized; normalizing");
        members.push_back(normalize_potential(m, tol));
    }
    return PotentialFamily(std::move(members));
}

Graph model_graph(const io::ModelFile& model) {
    switch (model.kind) {
        case io::ModelKind::graph: return *model.graph;
        case io::ModelKind::gaussian: return model.gaussian->pattern_graph();
        default: return induced_graph(hypergraph_of(*model.family), model.variables->all());
    }
}

ordered_json report_json(const VariableTable& vars, const MarginalReport& r, bool emit_potential) {
    ordered_json o;
    o["hypergraph"] = io::hypergraph_json(vars, r.hypergraph);
    o["boundary_hypergraph"] = io::hypergraph_json(vars, r.boundary_hypergraph);
    o["marginal_hypergraph"] = io::hypergraph_json(vars, r.marginal_hypergraph);
    o["restricted"] = io::hypergraph_json(vars, r.restricted);
    o["added"] = io::hypergraph_json(vars, r.added);
    o["removed"] = io::hypergraph_json(vars, r.removed);
    o["kept"] = io::hypergraph_json(vars, r.kept);
    o["marginal_graph"] = io::graph_json(vars, r.marginal_graph);
    o["restricted_graph"] = io::graph_json(vars, r.restricted_graph);
    o["graphically_collapsible"] = r.graphically_collapsible;
    o["parametrically_collapsible"] = r.parametrically_collapsible;
    o["ordering_condition"] = r.ordering_condition;
    if (emit_potential) {
        ordered_json ps = ordered_json::array();
        for (const auto& p : r.marginal_potentials) ps.push_back(io::potential_to_json(p));
        o["marginal_potential"] = std::move(ps);
    }
    return o;
}

}  // namespace

CommandResult marginalize_graph(const io::ModelFile& model, const CommandOptions& opts) {
    CommandResult res;
    const auto& vars = *model.variables;
    const VarSet keep = resolve_keep(vars, opts);
    const Graph g = model_graph(model);
    const Graph marginal = margraph::marginalize_graph(g, keep);
    const Graph sub = subgraph(g, keep);

    ordered_json doc = header("marginalize-graph", model, keep, opts);
    doc["marginal_graph"] = io::graph_json(vars, marginal);
    ordered_json comps = ordered_json::array();
    for (const auto& c : eliminated_components(g, keep)) {
        ordered_json x;
        x["members"] = io::labels_json(vars, c.members);
        x["boundary"] = io::labels_json(vars, c.boundary);
        comps.push_back(std::move(x));
    }
    doc["components"] = std::move(comps);
    EdgeSet fill;
    for (const auto& e : marginal.edges())
        if (!sub.edges().contains(e)) fill.insert(e);
    doc["fill_edges"] = io::edges_json(vars, fill);
    doc["collapsible"] = fill.empty();
    res.dot = io::to_dot(marginal, vars, "marginal");
    res.document = std::move(doc);
    return res;
}

CommandResult marginalize_hypergraph(const io::ModelFile& model, const CommandOptions& opts) {
    CommandResult res;
    const auto& vars = *model.variables;
    const VarSet keep = resolve_keep(vars, opts);
    const double tol = opts.tolerance.value_or(kNullTolerance);
    const PotentialFamily fam = prepared_family(model, opts, res, tol);
    const MarginalReport r = margraph::marginalize_hypergraph(fam, keep, tol);

    ordered_json doc = header("marginalize-hypergraph", model, keep, opts);
    const ordered_json body = report_json(vars, r, opts.emit_potential);
    for (const auto& [k, v] : body.items()) doc[k] = v;
    ordered_json diag;
    diag["null_tolerance"] = tol;
    diag["normalized_input"] = res.notices.empty();
    diag["empty_boundaries"] = boundary_hypergraph(r.hypergraph, vars.all(), keep).empty_boundaries;
    doc["diagnostics"] = std::move(diag);
    res.dot = io::to_dot(r.marginal_graph, vars, "marginal");
    res.document = std::move(doc);
    return res;
}

CommandResult marginalize_gaussian(const io::ModelFile& model, const CommandOptions& opts) {
    CommandResult res;
    if (!model.gaussian) throw InvalidInput("expected a gaussian model");
    const auto& vars = *model.variables;
    const VarSet keep = resolve_keep(vars, opts);
    const double rel = opts.tolerance.value_or(kGaussianRelTolerance);
    const GaussianModel& g = *model.gaussian;

    const GaussianModel marg = marginal_precision(g, keep);
    const Eigen::MatrixXd gamma = innovation_matrix(g, keep);
    const Graph ggraph = gaussian_marginal_graph(g, keep, rel);
    const Graph operator_graph = margraph::marginalize_graph(g.pattern_graph(), keep);
    const double threshold = rel * marg.precision().cwiseAbs().maxCoeff();

    ordered_json doc = header("marginalize-gaussian", model, keep, opts);
    ordered_json m;
    m["variables"] = io::labels_json(vars, keep);
    m["mean"] = std::vector<double>(marg.mean().data(), marg.mean().data() + marg.mean().size());
    m["precision"] = flatten(marg.precision());
    doc["marginal"] = std::move(m);
    doc["innovation_matrix"] = flatten(gamma);
    ordered_json innov = ordered_json::array();
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = i + 1; j < keep.size(); ++j) {
            const double x = gamma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (std::abs(x) <= threshold) continue;
            ordered_json e;
            e["pair"] = ordered_json::array({vars.label(keep[i]), vars.label(keep[j])});
            e["value"] = x;
            innov.push_back(std::move(e));
        }
    doc["innovations"] = std::move(innov);
    doc["gaussian_graph"] = io::graph_json(vars, ggraph);
    doc["graph_operator"] = io::graph_json(vars, operator_graph);
    ordered_json diag;
    diag["relative_tolerance"] = rel;
    diag["threshold"] = threshold;
    doc["diagnostics"] = std::move(diag);
    res.dot = io::to_dot(ggraph, vars, "gaussian_marginal");
    res.document = std::move(doc);
    return res;
}

CommandResult check_collapsibility(const io::ModelFile& model, const CommandOptions& opts) {
    CommandResult res;
    const auto& vars = *model.variables;
    const VarSet keep = resolve_keep(vars, opts);
    const double tol = opts.tolerance.value_or(kNullTolerance);
    const PotentialFamily fam = prepared_family(model, opts, res, tol);
    const MarginalReport r = margraph::marginalize_hypergraph(fam, keep, tol);

    EdgeSet appearing, disappearing;
    for (const auto& e : r.marginal_graph.edges())
        if (!r.restricted_graph.edges().contains(e)) appearing.insert(e);
    for (const auto& e : r.restricted_graph.edges())
        if (!r.marginal_graph.edges().contains(e)) disappearing.insert(e);
    Hypergraph innovation_scopes;
    for (const auto& list : r.member_innovations)
        for (const auto& inn : list) innovation_scopes.insert(inn.scope);

    ordered_json doc = header("check-collapsibility", model, keep, opts);
    doc["graphically_collapsible"] = r.graphically_collapsible;
    doc["parametrically_collapsible"] = r.parametrically_collapsible;
    ordered_json gw;
    gw["appearing_edges"] = io::edges_json(vars, appearing);
    gw["disappearing_edges"] = io::edges_json(vars, disappearing);
    gw["added"] = io::hypergraph_json(vars, r.added);
    gw["removed"] = io::hypergraph_json(vars, r.removed);
    doc["graphical_witness"] = std::move(gw);
    doc["parametric_witness"] = io::hypergraph_json(vars, innovation_scopes);
    doc["ordering_condition"] = r.ordering_condition;
    ordered_json diag;
    diag["null_tolerance"] = tol;
    doc["diagnostics"] = std::move(diag);
    res.dot = io::to_dot(r.marginal_graph, vars, "marginal");
    res.document = std::move(doc);
    return res;
}

CommandResult oracle_verify(const io::ModelFile& model, const CommandOptions& opts) {
    CommandResult res;
    const auto& vars = *model.variables;
    const VarSet keep = resolve_keep(vars, opts);
    const double tol = opts.tolerance.value_or(kNullTolerance);
    const PotentialFamily fam = prepared_family(model, opts, res, tol);
    const MarginalReport r = margraph::marginalize_hypergraph(fam, keep, tol);

    ordered_json checks = ordered_json::array();
    bool all_ok = true;
    auto record = [&](std::string name, double value, double threshold) {
        ordered_json c;
        c["name"] = std::move(name);
        c["value"] = value;
        c["threshold"] = threshold;
        c["passed"] = value <= threshold;
        all_ok = all_ok && value <= threshold;
        checks.push_back(std::move(c));
    };

    Hypergraph oracle_h;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const Potential& u = fam.members()[i];
        const auto joint = oracle::joint_table(u);
        const auto marginal = oracle::marginal_table(joint, keep);
        record("member " + std::to_string(i) + " marginal proportionality",
               oracle::proportionality_error(marginal, r.marginal_potentials[i]), kRoundTripTolerance);

        // normalization round trip against the table-based recovery
        const Potential direct = normalize_potential(u, tol);
        const Potential recovered = oracle::normalized_potential_from_table(joint, tol);
        double worst = scope_hypergraph(direct) == scope_hypergraph(recovered) ? 0.0 : INFINITY;
        for (const auto& [scope, t] : direct.tables())
            if (const auto* o = recovered.find(scope))
                for (std::size_t k = 0; k < t.size(); ++k) worst = std::max(worst, std::abs(t.values()[k] - o->values()[k]));
        record("member " + std::to_string(i) + " normalization round trip", worst, kRoundTripTolerance);

        for (const auto& e : hypergraph_of(oracle::normalized_potential_from_table(marginal, tol), tol)) oracle_h.insert(e);
    }
    record("marginal hypergraph matches oracle", oracle_h == r.marginal_hypergraph ? 0.0 : 1.0, 0.0);

    ordered_json doc = header("oracle-verify", model, keep, opts);
    doc["checks"] = std::move(checks);
    doc["oracle_hypergraph"] = io::hypergraph_json(vars, oracle_h);
    doc["marginal_hypergraph"] = io::hypergraph_json(vars, r.marginal_hypergraph);
    doc["passed"] = all_ok;
    res.document = std::move(doc);
    res.exit_code = all_ok ? kSuccess : kCheckFailed;
    return res;
}

namespace {

std::vector<std::string> split_labels(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Marginal graphs and hypergraph models of Gibbs distributions"};
    app.require_subcommand(1);

    struct Shared {
        std::string model;
        std::string keep;
        double tolerance = 0.0;
        bool emit_potential = false;
        bool strict = false;
        std::string format = "json";
        std::string output;
    } s;

    using Command = CommandResult (*)(const io::ModelFile&, const CommandOptions&);
    const std::vector<std::tuple<const char*, const char*, Command>> commands = {
        {"marginalize-graph", "Marginal undirected graph (graph, potential or gaussian pattern)", &marginalize_graph},
        {"marginalize-hypergraph", "Marginal potential and hypergraph of a potential family", &marginalize_hypergraph},
        {"marginalize-gaussian", "Schur-complement marginal of a gaussian model", &marginalize_gaussian},
        {"check-collapsibility", "Graphical and parametric collapsibility verdicts", &check_collapsibility},
        {"oracle-verify", "Cross-check the marginal against brute-force enumeration", &oracle_verify},
    };
    std::vector<std::pair<CLI::App*, Command>> subs;
    std::map<CLI::App*, CLI::Option*> tolerance_opts;
    for (const auto& [name, desc, fn] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("model", s.model, "Model file (JSON)")->required();
        sub->add_option("--keep", s.keep, "Comma-separated labels of the retained set")->required();
        tolerance_opts[sub] = sub->add_option("--tolerance", s.tolerance, "Null/edge tolerance override");
        sub->add_flag("--emit-potential", s.emit_potential, "Include marginal potential tables");
        sub->add_flag("--strict", s.strict, "Reject non-normalized potentials instead of normalizing");
        sub->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "dot"}));
        sub->add_option("--output", s.output, "Write the result to PATH instead of stdout");
        subs.emplace_back(sub, fn);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kValidationError;
    }

    try {
        for (const auto& [sub, fn] : subs) {
            if (!sub->parsed()) continue;
            CommandOptions opts;
            opts.model_path = s.model;
            opts.keep = split_labels(s.keep);
            if (tolerance_opts[sub]->count() > 0) {
                if (!(s.tolerance >= 0.0)) throw InvalidInput("--tolerance must be non-negative");
                opts.tolerance = s.tolerance;
            }
            opts.emit_potential = s.emit_potential;
            opts.strict = s.strict;

            const io::ModelFile model = io::load_model(s.model);
            CommandResult res = fn(model, opts);
            for (const auto& n : res.notices) err << "notice: " << n << "\n";

            std::string text;
            if (s.format == "dot") {
                if (!res.dot) throw InvalidInput("--format dot is not available for " + sub->get_name());
                text = *res.dot;
            } else {
                text = res.document.dump(2) + "\n";
            }
            if (s.output.empty()) {
                out << text;
            } else {
                std::ofstream f(s.output, std::ios::binary);
                if (!f) throw InvalidInput("cannot write '" + s.output + "'");
                f << text;
            }
            return res.exit_code;
        }
    } catch (const ResourceLimit& e) {
        err << "error: " << e.what() << "\n";
        return kResourceLimit;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kValidationError;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return kValidationError;
    }
    return kValidationError;
}

}  // namespace margraph::cli

#include "margraph/model_io.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "margraph/errors.hpp"

namespace margraph::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw InvalidInput(where + ": " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object()) fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, "missing field '" + key + "'");
    return *it;
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

std::string label(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a variable label");
    return j.get<std::string>();
}

VarId resolve(const VariableTable& vars, const json& j, const std::string& where) {
    const std::string l = label(j, where);
    auto id = vars.find(l);
    if (!id) fail(where, "unknown variable '" + l + "'");
    return *id;
}

VariableTable parse_variables(const json& doc) {
    const json& vs = field(doc, "variables", "model");
    if (!vs.is_array()) fail("variables", "expected an array");
    VariableTable vars;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const std::string where = "variables[" + std::to_string(i) + "]";
        const std::string l = label(field(vs[i], "label", where), where + ".label");
        Domain d;
        if (auto it = vs[i].find("domain"); it != vs[i].end()) {
            if (!it->is_array()) fail(where + ".domain", "expected an array");
            std::vector<double> values;
            for (std::size_t k = 0; k < it->size(); ++k)
                values.push_back(number((*it)[k], where + ".domain[" + std::to_string(k) + "]"));
            try {
                d = Domain(std::move(values));
            } catch (const InvalidInput& e) {
                fail(where + ".domain", e.what());
            }
        }
        if (vars.find(l)) fail(where + ".label", "duplicate label '" + l + "'");
        vars.add(l, std::move(d));
    }
    return vars;
}

Graph parse_graph(const json& g, const VariableTable& vars) {
    const json& edges = field(g, "edges", "graph");
    if (!edges.is_array()) fail("graph.edges", "expected an array");
    EdgeSet es;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string where = "graph.edges[" + std::to_string(i) + "]";
        if (!edges[i].is_array() || edges[i].size() != 2) fail(where, "expected a pair of labels");
        const VarId a = resolve(vars, edges[i][0], where + "[0]");
        const VarId b = resolve(vars, edges[i][1], where + "[1]");
        if (a == b) fail(where, "self-loop");
        es.emplace(a, b);
    }
    return Graph(vars.all(), es);
}

// Table values follow the scope order as written; axes are permuted into
// ascending id order.
InteractionTable parse_interaction(const json& j, const VariableTable& vars, const std::string& where) {
    const json& scope = field(j, "scope", where);
    if (!scope.is_array() || scope.empty()) fail(where + ".scope", "expected a non-empty array of labels");
    std::vector<VarId> written;
    for (std::size_t k = 0; k < scope.size(); ++k)
        written.push_back(resolve(vars, scope[k], where + ".scope[" + std::to_string(k) + "]"));
    VarSet sorted{std::vector<VarId>(written)};
    if (sorted.size() != written.size()) fail(where + ".scope", "repeated variable");

    const json& table = field(j, "table", where);
    if (!table.is_array()) fail(where + ".table", "expected an array");
    std::size_t expected = 1;
    for (VarId v : written) expected *= vars.domain(v).size();
    if (table.size() != expected)
        fail(where + ".table", "has " + std::to_string(table.size()) + " entries, scope needs " + std::to_string(expected));

    InteractionTable out(sorted, vars);
    std::vector<std::size_t> wd(written.size()), sd(written.size());
    for (std::size_t i = 0; i < expected; ++i) {
        std::size_t rest = i;
        for (std::size_t k = written.size(); k-- > 0;) {
            const std::size_t r = vars.domain(written[k]).size();
            wd[k] = rest % r;
            rest /= r;
        }
        for (std::size_t k = 0; k < written.size(); ++k) sd[sorted.position(written[k])] = wd[k];
        const double x = number(table[i], where + ".table[" + std::to_string(i) + "]");
        if (!std::isfinite(x)) fail(where + ".table[" + std::to_string(i) + "]", "not finite");
        out.at(sd) = x;
    }
    return out;
}

Potential parse_potential(const json& p, const VariablesPtr& vars, const std::string& where) {
    const json& inter = field(p, "interactions", where);
    if (!inter.is_array()) fail(where + ".interactions", "expected an array");
    Potential u(vars);
    for (std::size_t i = 0; i < inter.size(); ++i) {
        const std::string w = where + ".interactions[" + std::to_string(i) + "]";
        InteractionTable t = parse_interaction(inter[i], *vars, w);
        if (u.find(t.scope())) fail(w + ".scope", "scope listed twice");
        u.add(std::move(t));
    }
    return u;
}

GaussianModel parse_gaussian(const json& g, const VariableTable& vars) {
    const std::size_t n = vars.size();
    const json& mean = field(g, "mean", "gaussian");
    const json& prec = field(g, "precision", "gaussian");
    if (!mean.is_array() || mean.size() != n) fail("gaussian.mean", "expected " + std::to_string(n) + " numbers");
    if (!prec.is_array() || prec.size() != n * n)
        fail("gaussian.precision", "expected " + std::to_string(n * n) + " numbers (row-major)");
    Eigen::VectorXd mu(static_cast<Eigen::Index>(n));
    Eigen::MatrixXd p(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) mu(static_cast<Eigen::Index>(i)) = number(mean[i], "gaussian.mean[" + std::to_string(i) + "]");
    for (std::size_t i = 0; i < n * n; ++i)
        p(static_cast<Eigen::Index>(i / n), static_cast<Eigen::Index>(i % n)) =
            number(prec[i], "gaussian.precision[" + std::to_string(i) + "]");
    std::vector<std::string> labels;
    for (VarId v = 0; v < n; ++v) labels.push_back(vars.label(v));
    try {
        return GaussianModel(std::move(mu), std::move(p), std::move(labels));
    } catch (const InvalidInput& e) {
        fail("gaussian", e.what());
    }
}

}  // namespace

std::string_view to_string(ModelKind k) {
    switch (k) {
        case ModelKind::graph: return "graph";
        case ModelKind::potential: return "potential";
        case ModelKind::potential_family: return "potential_family";
        case ModelKind::gaussian: return "gaussian";
    }
    return "unknown";
}

ModelFile parse_model(const json& doc) {
    if (!doc.is_object()) fail("model", "expected a JSON object");
    ModelFile m;
    const json& ver = field(doc, "format_version", "model");
    if (!ver.is_number_integer() || ver.get<int>() != kFormatVersion)
        fail("format_version", "unsupported version (expected " + std::to_string(kFormatVersion) + ")");
    m.format_version = ver.get<int>();
    m.variables = std::make_shared<const VariableTable>(parse_variables(doc));

    int bodies = 0;
    for (const char* key : {"graph", "potential", "potential_family", "gaussian"}) bodies += doc.contains(key) ? 1 : 0;
    if (bodies != 1) fail("model", "expected exactly one of graph, potential, potential_family, gaussian");

    if (doc.contains("graph")) {
        m.kind = ModelKind::graph;
        m.graph = parse_graph(doc["graph"], *m.variables);
    } else if (doc.contains("potential")) {
        m.kind = ModelKind::potential;
        m.family = PotentialFamily{parse_potential(doc["potential"], m.variables, "potential")};
    } else if (doc.contains("potential_family")) {
        m.kind = ModelKind::potential_family;
        const json& members = field(doc["potential_family"], "members", "potential_family");
        if (!members.is_array() || members.empty()) fail("potential_family.members", "expected a non-empty array");
        std::vector<Potential> ps;
        for (std::size_t i = 0; i < members.size(); ++i)
            ps.push_back(parse_potential(members[i], m.variables, "potential_family.members[" + std::to_string(i) + "]"));
        m.family = PotentialFamily(std::move(ps));
    } else {
        m.kind = ModelKind::gaussian;
        m.gaussian = parse_gaussian(doc["gaussian"], *m.variables);
    }
    return m;
}

ModelFile parse_model_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InvalidInput("JSON syntax error at line " + std::to_string(line) + ", column " + std::to_string(col));
    }
    return parse_model(doc);
}

ModelFile load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open model file '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_model_text(ss.str());
    } catch (const InvalidInput& e) {
        throw InvalidInput(path.string() + ": " + e.what());
    }
}

ordered_json labels_json(const VariableTable& vars, const VarSet& s) {
    ordered_json a = ordered_json::array();
    for (VarId v : s) a.push_back(vars.label(v));
    return a;
}

ordered_json hypergraph_json(const VariableTable& vars, const Hypergraph& h) {
    ordered_json a = ordered_json::array();
    for (const auto& e : h) a.push_back(labels_json(vars, e));
    return a;
}

ordered_json edges_json(const VariableTable& vars, const EdgeSet& es) {
    ordered_json a = ordered_json::array();
    for (const auto& e : es) a.push_back(ordered_json::array({vars.label(e.first), vars.label(e.second)}));
    return a;
}

ordered_json graph_json(const VariableTable& vars, const Graph& g) {
    ordered_json o;
    o["vertices"] = labels_json(vars, g.vertices());
    o["edges"] = edges_json(vars, g.edges());
    return o;
}

ordered_json potential_to_json(const Potential& u) {
    ordered_json inter = ordered_json::array();
    for (const auto& [scope, table] : u.tables()) {
        ordered_json t;
        t["scope"] = labels_json(u.variables(), scope);
        t["table"] = table.values();
        inter.push_back(std::move(t));
    }
    ordered_json o;
    o["interactions"] = std::move(inter);
    return o;
}

ordered_json to_json(const ModelFile& m) {
    ordered_json doc;
    doc["format_version"] = m.format_version;
    ordered_json vars = ordered_json::array();
    for (VarId v = 0; v < m.variables->size(); ++v) {
        ordered_json x;
        x["label"] = m.variables->label(v);
        x["domain"] = m.variables->domain(v).values();
        vars.push_back(std::move(x));
    }
    doc["variables"] = std::move(vars);
    switch (m.kind) {
        case ModelKind::graph: {
            ordered_json g;
            g["edges"] = edges_json(*m.variables, m.graph->edges());
            doc["graph"] = std::move(g);
            break;
        }
        case ModelKind::potential:
            doc["potential"] = potential_to_json(m.family->members().front());
            break;
        case ModelKind::potential_family: {
            ordered_json members = ordered_json::array();
            for (const auto& p : m.family->members()) members.push_back(potential_to_json(p));
            ordered_json f;
            f["members"] = std::move(members);
            doc["potential_family"] = std::move(f);
            break;
        }
        case ModelKind::gaussian: {
            const auto& g = *m.gaussian;
            ordered_json o;
            o["mean"] = std::vector<double>(g.mean().data(), g.mean().data() + g.mean().size());
            std::vector<double> flat;
            for (Eigen::Index i = 0; i < g.precision().rows(); ++i)
                for (Eigen::Index j = 0; j < g.precision().cols(); ++j) flat.push_back(g.precision()(i, j));
            o["precision"] = std::move(flat);
            doc["gaussian"] = std::move(o);
            break;
        }
    }
    return doc;
}

std::string to_dot(const Graph& g, const VariableTable& vars, std::string_view name) {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    for (VarId v : g.vertices()) os << "  \"" << vars.label(v) << "\";\n";
    for (const auto& e : g.edges()) os << "  \"" << vars.label(e.first) << "\" -- \"" << vars.label(e.second) << "\";\n";
    os << "}\n";
    return os.str();
}

}  // namespace margraph::io

#include "margraph/oracle.hpp"

#include <cmath>

#include "margraph/errors.hpp"

namespace margraph::oracle {

namespace {

// Term-by-term energy; `full` holds a digit for every registered variable.
double naive_energy(const Potential& u, const std::vector<std::size_t>& full) {
    double e = 0.0;
    for (const auto& [scope, table] : u.tables()) {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < scope.size(); ++k) idx = idx * table.radix()[k] + full[scope[k]];
        e += table.values()[idx];
    }
    return e;
}

}  // namespace

std::size_t DensityTable::index_of(std::span<const std::size_t> digits) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < scope.size(); ++k) idx = idx * variables->domain(scope[k]).size() + digits[k];
    return idx;
}

std::vector<std::size_t> DensityTable::digits_of(std::size_t index) const {
    std::vector<std::size_t> d(scope.size());
    for (std::size_t k = scope.size(); k-- > 0;) {
        const std::size_t r = variables->domain(scope[k]).size();
        d[k] = index % r;
        index /= r;
    }
    return d;
}

DensityTable joint_table(const Potential& u) {
    const auto& vars = u.variables();
    const VarSet scope = vars.all();
    const auto count = vars.state_count(scope, kMaxJointStates);
    if (!count) throw ResourceLimit("joint state space exceeds " + std::to_string(kMaxJointStates));

    DensityTable t{u.variables_ptr(), scope, std::vector<double>(*count)};
    std::vector<double> e(*count);
    double lowest = INFINITY;
    for (std::size_t i = 0; i < *count; ++i) {
        e[i] = naive_energy(u, t.digits_of(i));
        lowest = std::min(lowest, e[i]);
    }
    double k = 0.0;
    for (std::size_t i = 0; i < *count; ++i) {
        t.probabilities[i] = std::exp(lowest - e[i]);
        k += t.probabilities[i];
    }
    for (double& p : t.probabilities) p /= k;
    return t;
}

DensityTable marginal_table(const DensityTable& t, const VarSet& a) {
    if (!t.scope.contains_all(a)) throw InvalidInput("marginal_table: subset is not inside the table scope");
    DensityTable m{t.variables, a, {}};
    std::size_t n = 1;
    for (VarId v : a) n *= t.variables->domain(v).size();
    m.probabilities.assign(n, 0.0);
    std::vector<std::size_t> sub(a.size());
    for (std::size_t i = 0; i < t.probabilities.size(); ++i) {
        const auto d = t.digits_of(i);
        for (std::size_t k = 0; k < a.size(); ++k) sub[k] = d[t.scope.position(a[k])];
        m.probabilities[m.index_of(sub)] += t.probabilities[i];
    }
    return m;
}

Potential normalized_potential_from_table(const DensityTable& t, double null_tol) {
    const auto& vars = *t.variables;
    for (double p : t.probabilities)
        if (!(p > 0.0)) throw InvalidInput("density table must be strictly positive");

    const std::size_t n = t.scope.size();
    std::vector<std::size_t> zero(n);
    for (std::size_t k = 0; k < n; ++k) zero[k] = vars.domain(t.scope[k]).zero_index();

    Potential out(t.variables);
    std::vector<std::size_t> full(n);
    for (std::size_t cmask = 1; cmask < (std::size_t{1} << n); ++cmask) {
        std::vector<VarId> members;
        std::vector<std::size_t> pos;
        for (std::size_t k = 0; k < n; ++k)
            if (cmask & (std::size_t{1} << k)) {
                members.push_back(t.scope[k]);
                pos.push_back(k);
            }
        VarSet c(members);
        InteractionTable table(c, vars);
        std::vector<std::size_t> cd(c.size());
        for (std::size_t i = 0; i < table.size(); ++i) {
            table.decode(i, cd);
            bool any_zero = false;
            for (std::size_t k = 0; k < cd.size(); ++k) any_zero = any_zero || cd[k] == zero[pos[k]];
            if (any_zero) continue;
            // Σ over B ⊆ C of (-1)^{|C \ B|} (-ln t(c_B, 0))
            double acc = 0.0;
            const std::size_t m = c.size();
            for (std::size_t bmask = 0; bmask < (std::size_t{1} << m); ++bmask) {
                full = zero;
                std::size_t dropped = m;
                for (std::size_t k = 0; k < m; ++k)
                    if (bmask & (std::size_t{1} << k)) {
                        full[pos[k]] = cd[k];
                        --dropped;
                    }
                const double term = -std::log(t.probabilities[t.index_of(full)]);
                acc += (dropped % 2 == 0) ? term : -term;
            }
            table.mutable_values()[i] = acc;
        }
        if (!table.is_null(null_tol)) out.add(std::move(table));
    }
    return out;
}

double proportionality_error(const DensityTable& t, const Potential& u) {
    std::vector<std::size_t> full(t.variables->size());
    for (VarId v = 0; v < full.size(); ++v) full[v] = t.variables->domain(v).zero_index();
    for (const auto& [scope, table] : u.tables())
        if (!t.scope.contains_all(scope)) throw InvalidInput("potential reaches outside the density scope");

    std::vector<double> log_ratio(t.probabilities.size());
    for (std::size_t i = 0; i < t.probabilities.size(); ++i) {
        const auto d = t.digits_of(i);
        for (std::size_t k = 0; k < d.size(); ++k) full[t.scope[k]] = d[k];
        log_ratio[i] = std::log(t.probabilities[i]) + naive_energy(u, full);
    }
    double worst = 0.0;
    for (double l : log_ratio) worst = std::max(worst, std::abs(std::expm1(l - log_ratio[0])));
    return worst;
}

}  // namespace margraph::oracle

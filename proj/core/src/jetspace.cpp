#include "pjet/jetspace.hpp"

namespace pjet {

SchemePresentation SchemePresentation::make(VarsPtr vars, std::vector<DeltaPoly> relations,
                                            std::string label) {
    for (const auto& f : relations) {
        if (!f.vars()->same(*vars)) throw ContextMismatch("relation over wrong variable set");
        if (f.max_order_used() > 0)
            throw DomainError("scheme relations must involve only order-0 variables");
        if (!f.is_p_integral()) throw NonIntegralInput("scheme relation not p-integral");
    }
    return SchemePresentation{std::move(vars), std::move(relations), std::move(label)};
}

std::vector<DeltaPoly> JetPresentation::flat_relations() const {
    std::vector<DeltaPoly> out;
    for (const auto& row : relations)
        for (const auto& f : row) out.push_back(f);
    return out;
}

JetPresentation build_jet(const SchemePresentation& X, int n) {
    if (n < 0) throw DomainError("jet order must be >= 0");
    auto vars = JetVarSet::make(
        [&] {
            std::vector<std::string> names;
            for (int i = 0; i < X.vars->nbase(); ++i) names.push_back(X.vars->base_name(i));
            return names;
        }(),
        n, X.vars->p());

    // transport order-0 relations into the order-n variable set
    std::vector<int> var_map(X.vars->nvars(), -1);
    for (int i = 0; i < X.vars->nbase(); ++i)
        var_map[X.vars->index(i, 0)] = vars->index(i, 0);

    JetPresentation J;
    J.vars = vars;
    J.order = n;
    J.label = X.label;
    for (const auto& f : X.relations) {
        std::vector<DeltaPoly> row;
        row.push_back(f.transport(vars, var_map));
        for (int j = 1; j <= n; ++j) row.push_back(delta(row.back()));
        J.relations.push_back(std::move(row));
    }
    return J;
}

std::vector<std::vector<PadicElem>> jet_of_point(const SchemePresentation& X, int n,
                                                 const std::vector<PadicElem>& alpha) {
    if ((int)alpha.size() != X.vars->nbase())
        throw DomainError("point has wrong number of coordinates");
    int prec = alpha.empty() ? 0 : alpha[0].prec();
    for (const auto& a : alpha) prec = std::min(prec, a.prec());
    if (prec < n + 1)
        throw InsufficientPrecision("jet of order " + std::to_string(n) + " needs precision >= " +
                                    std::to_string(n + 1));

    // check the point satisfies the order-0 relations
    std::vector<PadicElem> values;
    for (int i = 0; i < X.vars->nbase(); ++i)
        for (int j = 0; j <= X.vars->max_order(); ++j)
            values.push_back(j == 0 ? alpha[i] : PadicElem::zero(alpha[i].ctx()));
    for (const auto& f : X.relations)
        if (!f.eval(values).is_zero())
            throw NotOnScheme(X.label.empty() ? "point violates a relation" : X.label);

    std::vector<std::vector<PadicElem>> jet(alpha.size());
    for (size_t i = 0; i < alpha.size(); ++i) {
        jet[i].push_back(alpha[i]);
        for (int j = 1; j <= n; ++j) jet[i].push_back(fermat_quotient(jet[i].back()));
    }
    return jet;
}

bool ideal_membership_mod_p(const DeltaPoly& g, const JetPresentation& J, const GBCaps& caps) {
    std::vector<GFpPoly> gens;
    for (const auto& f : J.flat_relations()) gens.push_back(to_gfp(f));
    if (gens.empty()) return to_gfp(g).is_zero();
    auto gb = Groebner::compute(gens, caps);
    DeltaPoly gg = g;
    if (!g.vars()->same(*J.vars)) {
        // accept polynomials over a varset with the same shape
        if (g.vars()->nvars() != J.vars->nvars())
            throw ContextMismatch("membership query over wrong variable set");
    }
    return gb.contains(to_gfp(gg));
}

bool jacobian_solvable_at(const JetPresentation& J,
                          const std::vector<std::vector<PadicElem>>& jet) {
    if (J.relations.empty()) return true;
    const auto& vars = J.vars;
    const long long p = vars->p();
    std::vector<PadicElem> flat;
    for (int i = 0; i < vars->nbase(); ++i)
        for (int j = 0; j <= vars->max_order(); ++j) flat.push_back(jet[i][j]);

    const int rows = (int)J.relations.size();
    for (int j = 1; j <= J.order; ++j) {
        // rank over F_p of d(delta^j f_i)/d(x_k^(j)) at the jet
        std::vector<std::vector<long long>> M(rows, std::vector<long long>(vars->nbase()));
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < vars->nbase(); ++k) {
                PadicElem v = J.relations[i][j].derivative(vars->index(k, j)).eval(flat);
                M[i][k] = (long long)(v.coeffs()[0] % p);
            }
        int rank = 0;
        for (int c = 0; c < vars->nbase() && rank < rows; ++c) {
            int piv = -1;
            for (int r = rank; r < rows; ++r)
                if (M[r][c] % p != 0) { piv = r; break; }
            if (piv < 0) continue;
            std::swap(M[rank], M[piv]);
            long long inv = gfp_inv(M[rank][c], p);
            for (int r = 0; r < rows; ++r) {
                if (r == rank) continue;
                long long f = M[r][c] * inv % p;
                for (int cc = 0; cc < vars->nbase(); ++cc)
                    M[r][cc] = ((M[r][cc] - f * M[rank][cc]) % p + p) % p;
            }
            ++rank;
        }
        if (rank < rows) return false;
    }
    return true;
}

} // namespace pjet

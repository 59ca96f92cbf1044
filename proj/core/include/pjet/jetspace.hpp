#pragma once

#include <string>
#include <vector>

#include "pjet/groebner.hpp"
#include "pjet/poly.hpp"

namespace pjet {

// Affine presentation Spec R[x]/(f): order-0 relations over a jet variable
// set.  The varset may carry order headroom; relations must not use it.
struct SchemePresentation {
    VarsPtr vars;
    std::vector<DeltaPoly> relations;
    std::string label;

    static SchemePresentation make(VarsPtr vars, std::vector<DeltaPoly> relations,
                                   std::string label = "");
};

// J^n(X): variables x, x', ..., x^(n); relations f, delta f, ..., delta^n f.
struct JetPresentation {
    VarsPtr vars; // max_order == order
    int order = 0;
    // relations[i][j] = delta^j f_i
    std::vector<std::vector<DeltaPoly>> relations;
    std::string label;

    std::vector<DeltaPoly> flat_relations() const;
};

JetPresentation build_jet(const SchemePresentation& X, int n);

// (alpha, delta alpha, ..., delta^n alpha); checks alpha lies on X first.
// Output indexed [coordinate][order]; entries at precision prec(alpha) - n.
std::vector<std::vector<PadicElem>> jet_of_point(const SchemePresentation& X, int n,
                                                 const std::vector<PadicElem>& alpha);

// g mod p in the ideal generated by the jet relations mod p?
bool ideal_membership_mod_p(const DeltaPoly& g, const JetPresentation& J,
                            const GBCaps& caps = {});

// Desk-scale fibration proxy: at the jet of a point, the block Jacobian
// d(delta^j f_i)/d(x_k^(j)) has full row rank mod p for every 1 <= j <= n.
bool jacobian_solvable_at(const JetPresentation& J,
                          const std::vector<std::vector<PadicElem>>& jet);

} // namespace pjet

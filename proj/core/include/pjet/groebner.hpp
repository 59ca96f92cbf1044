#pragma once

#include <optional>
#include <vector>

#include "pjet/gfp.hpp"

namespace pjet {

struct GBCaps {
    long long degree_cap = 64;   // DegreeBoundExceeded beyond this
    long long pair_cap = 200000; // CapExceeded beyond this many S-pairs
};

// Buchberger over F_p with representation tracking: every basis element
// carries its expression as a combination of the original generators, so
// membership witnesses can be lifted to characteristic zero.
class Groebner {
public:
    static Groebner compute(const std::vector<GFpPoly>& gens, const GBCaps& caps = {});

    // fully reduced normal form; if combo != nullptr it receives polynomials
    // q_j with f = sum_j q_j * gens[j] + remainder (mod p)
    GFpPoly normal_form(const GFpPoly& f, std::vector<GFpPoly>* combo = nullptr) const;
    bool contains(const GFpPoly& f) const;

    const std::vector<GFpPoly>& basis() const { return basis_; }
    int n_original() const { return n_orig_; }

private:
    long long p_ = 2;
    int nvars_ = 0;
    int n_orig_ = 0;
    std::vector<GFpPoly> basis_;
    std::vector<std::vector<GFpPoly>> reps_; // basis_[i] = sum reps_[i][j]*orig[j]
};

} // namespace pjet

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pjet/padic.hpp"
#include "pjet/rat.hpp"

namespace pjet {

class JetVarSet;
using VarsPtr = std::shared_ptr<const JetVarSet>;

// The variable universe x, x', ..., x^(n) for a tuple of base variables,
// fixed prime p.  Variable (i, j) is base i at jet order j.
class JetVarSet {
public:
    static VarsPtr make(std::vector<std::string> base_vars, int max_order, long long p);

    int nbase() const { return (int)base_.size(); }
    int max_order() const { return max_order_; }
    long long p() const { return p_; }
    int nvars() const { return nbase() * (max_order_ + 1); }

    int index(int base_i, int order) const { return base_i * (max_order_ + 1) + order; }
    int order_of(int idx) const { return idx % (max_order_ + 1); }
    int base_of(int idx) const { return idx / (max_order_ + 1); }
    const std::string& base_name(int i) const { return base_[i]; }
    std::string var_name(int idx) const;
    std::optional<int> find_base(const std::string& name) const;

    // weight p^order; delta and phi scale this grading by exactly p
    Int weight(int idx) const { return int_pow(Int(p_), (unsigned long)order_of(idx)); }

    bool same(const JetVarSet& o) const {
        return base_ == o.base_ && max_order_ == o.max_order_ && p_ == o.p_;
    }

private:
    std::vector<std::string> base_;
    int max_order_ = 0;
    long long p_ = 0;
};

using Mono = std::vector<int32_t>;

struct GrlexLess {
    bool operator()(const Mono& a, const Mono& b) const;
};

// Optional truncation applied during multiplication/substitution.
// weighted_cap bounds sum(e_i * p^{order(i)}), total_cap bounds sum(e_i);
// var_cap bounds the exponent of one designated variable (Laurent window),
// jet_cap bounds the total degree across all order >= 1 variables.
// Negative means no cap.
struct TruncLimits {
    long long weighted_cap = -1;
    long long total_cap = -1;
    int capped_var = -1;
    long long var_cap = -1;
    long long jet_cap = -1;
    bool unlimited() const {
        return weighted_cap < 0 && total_cap < 0 && capped_var < 0 && jet_cap < 0;
    }
};

// Exact sparse polynomial in jet variables with rational coefficients.
// Everything the jet-ring operations produce keeps denominators that are
// powers of p; general denominators occur only in series work layered on top.
class DeltaPoly {
public:
    using TermMap = std::map<Mono, Rat, GrlexLess>;

    DeltaPoly() = default;
    explicit DeltaPoly(VarsPtr vars) : vars_(std::move(vars)) {}
    static DeltaPoly zero(const VarsPtr& vars) { return DeltaPoly(vars); }
    static DeltaPoly constant(const VarsPtr& vars, const Rat& c);
    static DeltaPoly variable(const VarsPtr& vars, int base_i, int order, int exp = 1);
    static DeltaPoly monomial(const VarsPtr& vars, Mono m, const Rat& c);

    const VarsPtr& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int nterms() const { return (int)terms_.size(); }

    // denominators: 1 everywhere / prime to p everywhere
    bool is_integral() const;
    bool is_p_integral() const;
    // min over terms of v_p(coefficient); 0 for the zero polynomial
    long min_coeff_valuation() const;

    long long total_degree() const;
    Int weighted_degree() const;
    int max_order_used() const;
    bool depends_on(int var_idx) const;

    void add_term(const Mono& m, const Rat& c);

    DeltaPoly operator-() const;
    DeltaPoly operator+(const DeltaPoly& o) const;
    DeltaPoly operator-(const DeltaPoly& o) const;
    DeltaPoly operator*(const DeltaPoly& o) const;
    DeltaPoly& operator+=(const DeltaPoly& o);
    DeltaPoly& operator-=(const DeltaPoly& o);
    DeltaPoly mul(const DeltaPoly& o, const TruncLimits& lim) const;
    DeltaPoly scaled(const Rat& c) const;
    DeltaPoly pow(unsigned long e, const TruncLimits& lim = {}) const;

    // divide every coefficient by p; exact_required asserts the result stays
    // p-integral (the jet-ring divisions are exact by construction)
    DeltaPoly div_p(bool exact_required) const;

    DeltaPoly derivative(int var_idx) const;
    DeltaPoly truncated(const TruncLimits& lim) const;

    // replace each (p-integral) coefficient by its integer representative
    // mod p^K; exact for any computation that needs the result mod p^{K-j}
    // after j further divisions by p
    DeltaPoly coeffs_mod_ppow(int K) const;

    // substitute images[i] for variable i (nullptr entry = keep variable)
    DeltaPoly substitute(const std::vector<const DeltaPoly*>& images,
                         const TruncLimits& lim = {}) const;
    // rename/transport into another varset mapping variable indices
    DeltaPoly transport(const VarsPtr& to, const std::vector<int>& var_map) const;

    PadicElem eval(const std::vector<PadicElem>& values) const;
    Rat eval_rat(const std::vector<Rat>& values) const;

    bool operator==(const DeltaPoly& o) const;

    std::string to_string() const;

private:
    VarsPtr vars_;
    TermMap terms_;
};

void require_same_vars(const DeltaPoly& a, const DeltaPoly& b);

// phi(f): the ring map x^(j) -> (x^(j))^p + p x^(j+1).  OrderOverflow when f
// already involves the top order.  Coefficients (rationals) are fixed.
DeltaPoly phi(const DeltaPoly& f, const TruncLimits& lim = {});

// delta(f) = (phi(f) - f^p)/p.  Input must be p-integral; the division is
// exact as a polynomial identity, checked.
DeltaPoly delta(const DeltaPoly& f, const TruncLimits& lim = {});

// C_p(f,g) = (f^p + g^p - (f+g)^p)/p
DeltaPoly c_p(const DeltaPoly& f, const DeltaPoly& g);

// Canonical prolongation of the derivation xi (given on base variables) to
// jet order n; the unique K-derivation restricting to xi and commuting with
// phi.  Output may carry p-power denominators.
DeltaPoly prolong_derivation(const std::vector<DeltaPoly>& xi_images,
                             const DeltaPoly& f, int n);

struct SymmetryReport {
    bool holds = false;
    std::optional<DeltaPoly> witness; // first failing image (variational mode)
};

// variational = true: xi^(n) must annihilate every generator.
// variational = false: each image must lie in the K-linear span of the
// generators (infinitesimal symmetry), decided by exact linear algebra.
SymmetryReport is_variational_symmetry(const std::vector<DeltaPoly>& xi_images,
                                       const std::vector<DeltaPoly>& generators,
                                       int n, bool variational,
                                       int monomial_cap = 100000);

// Text grammar: sums of terms `coef * x^a * x'^b ...` with explicit p^-k
// denominator factors.  The printer emits canonical grlex-descending order;
// the parser accepts the same grammar (round-trip safe).
std::string print_poly(const DeltaPoly& f);
DeltaPoly parse_poly(const VarsPtr& vars, const std::string& text);

} // namespace pjet

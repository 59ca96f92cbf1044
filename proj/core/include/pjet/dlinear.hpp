#pragma once

#include <optional>

#include "pjet/groebner.hpp"
#include "pjet/padic.hpp"
#include "pjet/poly.hpp"

namespace pjet {

// Square matrix of PadicElem entries sharing one context.
class DeltaMatrix {
public:
    DeltaMatrix() = default;
    DeltaMatrix(CtxPtr ctx, int n);
    static DeltaMatrix identity(const CtxPtr& ctx, int n);

    int n() const { return n_; }
    const CtxPtr& ctx() const { return ctx_; }
    PadicElem& at(int i, int j) { return e_[i * n_ + j]; }
    const PadicElem& at(int i, int j) const { return e_[i * n_ + j]; }

    int prec() const; // min over entries
    DeltaMatrix with_prec(int prec) const;

    DeltaMatrix operator+(const DeltaMatrix& o) const;
    DeltaMatrix operator-(const DeltaMatrix& o) const;
    DeltaMatrix operator*(const DeltaMatrix& o) const;
    DeltaMatrix scaled(const PadicElem& c) const;
    DeltaMatrix scaled_int(const Int& c) const;
    DeltaMatrix inverse() const; // NotInvertible unless det is a unit
    bool invertible_mod_p() const;

    // entrywise maps
    DeltaMatrix entrywise_frobenius() const;
    DeltaMatrix entrywise_delta() const;   // fermat quotient, costs one digit
    DeltaMatrix entrywise_pow_p() const;   // u^{(p)}

    bool eq_mod(const DeltaMatrix& o, int digits) const;
    bool is_zero_mod(int digits) const;

private:
    CtxPtr ctx_;
    int n_ = 0;
    std::vector<PadicElem> e_;
};

void require_same_shape(const DeltaMatrix& a, const DeltaMatrix& b);

// a +_delta b = a + b + p ab (noncommutative group law on gl_n)
DeltaMatrix plus_delta(const DeltaMatrix& a, const DeltaMatrix& b);
// inverse for +_delta: solves a + b + p a b = 0
DeltaMatrix plus_delta_inverse(const DeltaMatrix& a);
// a *_delta b = phi(a) b phi(a)^{-1}
DeltaMatrix star_delta(const DeltaMatrix& a, const DeltaMatrix& b);

// A delta-flow on GL_n: Phi(x) = x^{(p)} + p Delta(x) with Delta given by
// polynomial entries over det(x)^{-det_pow} (det_pow = 0 for polynomial
// flows; Delta empty means the canonical flow Delta = 0).
struct DeltaFlow {
    int n = 1;
    VarsPtr vars;                   // x11..xnn at order 0
    std::vector<DeltaPoly> entries; // row-major, may be empty (canonical)
    int det_pow = 0;

    bool canonical() const { return entries.empty(); }
};
DeltaFlow canonical_flow(long long p, int n);
VarsPtr gl_vars(long long p, int n);
DeltaPoly det_poly(const VarsPtr& vars, int n);

// Delta(a) evaluated at a matrix (det(a) must be a unit when det_pow > 0)
DeltaMatrix eval_flow(const DeltaFlow& flow, const DeltaMatrix& a);

// arithmetic logarithmic derivative:
// l_delta(a) = (delta a - Delta(a)) (a^{(p)} + p Delta(a))^{-1}
DeltaMatrix ldelta(const DeltaMatrix& a, const DeltaFlow& flow);

// unique solution of delta u = alpha u^{(p)} with u = u0 mod p, via the
// contraction u <- (1 + p alpha) u^{(p)}
DeltaMatrix solve_delta_linear(const DeltaMatrix& alpha, const DeltaMatrix& u0);
// residual delta u - alpha u^{(p)} at precision prec(u) - 1
DeltaMatrix delta_linear_residual(const DeltaMatrix& alpha, const DeltaMatrix& u);

// --- delta-Galois groups ----------------------------------------------------

enum class OSubring {
    PrimeRing,             // Z_p inside R
    TeichmullerGenerated,  // subring generated by Teichmuller representatives
};

struct GaloisOptions {
    long long search_cap = 2000000; // candidate budget
    int relation_exponent_cap = 64; // for detecting u^e in O (n = 1)
};

// Enumerates c in GL_n(O) mod p^N such that u -> uc extends to a
// delta-compatible automorphism of O[u] at working precision, verified on
// the generating set via the equation delta u = alpha u^{(p)}.
// The result is an "at precision N" object.
std::vector<DeltaMatrix> delta_galois_group(const DeltaMatrix& u, OSubring O,
                                            const GaloisOptions& opt = {});

// --- quadratic maps and flow compatibility ---------------------------------

enum class GroupTag { GL, Sp, SOeven, SOodd };

struct QuadraticMapData {
    GroupTag tag;
    int n;
    std::vector<int> q; // row-major entries in {-1,0,1}; empty for GL (H = 1)
};
QuadraticMapData canonical_quadratic_map(GroupTag tag, int n);

struct FlowReport {
    bool horizontal = false;         // delta_G H = 0 exactly
    bool horizontal_mod_p2 = false;  // delta_G H = 0 mod p
    bool symmetric = false;
    std::optional<DeltaPoly> horizontality_witness; // first nonzero entry of delta_G H
    std::vector<bool> ideal_stable_mod_pk;          // index k-1: mod p^k
};

// (a) horizontality: H(Phi(x)) = H(x)^{(p)} entrywise, i.e. delta_G H = 0;
// (b) symmetry: Phi0(x)^dagger q Phi(x) = Phi(x)^dagger q Phi0(x);
// (c) ideal of S = H^{-1}(q)^0 mapped into itself mod p^k for k <= k_max.
FlowReport check_flow_compatibility(const DeltaFlow& flow, const QuadraticMapData& H,
                                    int k_max = 2, const GBCaps& caps = {});

// Linear solve for a flow making H horizontal mod p^2: finds Delta(x) with
// entries det(x)^{-det_pow} * (degree <= deg_bound polynomials) such that
// delta_G H = 0 mod p.  Returns nullopt when the bounded system is
// inconsistent.
std::optional<DeltaFlow> solve_flow_horizontal_mod_p(long long p, const QuadraticMapData& H,
                                                     int deg_bound, int det_pow);

} // namespace pjet

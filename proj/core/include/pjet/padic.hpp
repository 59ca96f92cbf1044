#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pjet/rat.hpp"

namespace pjet {

class PadicCtx;
using CtxPtr = std::shared_ptr<const PadicCtx>;

// Working context: the finite slice Z/p^N of Z_p, or of the unramified
// extension W(F_{p^m}) presented as Z_p[t]/(ext_modulus).  Immutable after
// creation; the extension Frobenius is Hensel-lifted eagerly and cached here.
class PadicCtx {
public:
    static CtxPtr make(long long p, int N);
    // ext_modulus: monic integer polynomial of degree m >= 2, irreducible mod p,
    // listed from the constant coefficient up (monic leading 1 included).
    static CtxPtr make_ext(long long p, int N, const std::vector<Int>& ext_modulus);

    long long p() const { return p_; }
    int precision() const { return N_; }
    int ext_degree() const { return m_; }
    const std::vector<Int>& ext_modulus() const { return modulus_; }

    const Int& p_pow(int k) const; // p^k for 0 <= k <= N
    // phi(t)^i reduced mod (modulus, p^N), i = 0..m-1; empty when m == 1.
    const std::vector<std::vector<Int>>& frobenius_generator_powers() const { return frob_pows_; }

    bool same(const PadicCtx& o) const {
        return p_ == o.p_ && N_ == o.N_ && m_ == o.m_ && modulus_ == o.modulus_;
    }

private:
    PadicCtx() = default;
    long long p_ = 0;
    int N_ = 0;
    int m_ = 1;
    std::vector<Int> modulus_;               // size m_+1 when m_ > 1
    std::vector<Int> ppows_;                 // p^0..p^N
    std::vector<std::vector<Int>> frob_pows_;
};

// Element of the context ring with explicit precision.  Coefficients are the
// residue representative mod p^prec: a single integer when m = 1, otherwise a
// polynomial of degree < m in the extension generator.
class PadicElem {
public:
    PadicElem() = default;
    PadicElem(CtxPtr ctx, const Int& value);              // full precision N
    PadicElem(CtxPtr ctx, const Int& value, int prec);
    static PadicElem from_coeffs(CtxPtr ctx, std::vector<Int> coeffs, int prec);
    static PadicElem zero(const CtxPtr& ctx) { return PadicElem(ctx, 0); }
    static PadicElem one(const CtxPtr& ctx) { return PadicElem(ctx, 1); }
    // Embeds a rational with v_p >= 0; denominator (a unit) is inverted mod p^N.
    static PadicElem from_rational(const CtxPtr& ctx, const Rat& r);

    const CtxPtr& ctx() const { return ctx_; }
    int prec() const { return prec_; }
    const std::vector<Int>& coeffs() const { return c_; }
    const Int& lift() const { return c_[0]; } // residue in [0, p^prec); m = 1 view

    bool is_zero() const;       // zero at the element's own precision
    bool is_unit() const;       // nonzero residue mod p
    // v_p, capped at prec (an element that is 0 mod p^prec reports prec).
    int valuation() const;

    PadicElem with_prec(int prec) const; // reduce (never raise) precision

    PadicElem operator-() const;
    PadicElem operator+(const PadicElem& o) const;
    PadicElem operator-(const PadicElem& o) const;
    PadicElem operator*(const PadicElem& o) const;
    PadicElem& operator+=(const PadicElem& o) { return *this = *this + o; }
    PadicElem& operator-=(const PadicElem& o) { return *this = *this - o; }
    PadicElem& operator*=(const PadicElem& o) { return *this = *this * o; }

    PadicElem inverse() const;                  // NotInvertible on non-units
    PadicElem operator/(const PadicElem& o) const { return *this * o.inverse(); }
    PadicElem pow(Int e) const;                  // negative e via inverse

    // Exact division by p: argument must vanish mod p; costs one digit.
    PadicElem div_exact_p() const;
    // a/b when v(b) <= v(a); costs v(b) digits of precision.
    PadicElem divide_exact(const PadicElem& b) const;

    // Equal as residues at the smaller of the two precisions.
    bool eq_at_min_prec(const PadicElem& o) const;
    bool eq_mod(const PadicElem& o, int digits) const;

    // Balanced representative in (-p^prec/2, p^prec/2]; m = 1 only.
    Int balanced() const;
    std::string to_string() const;

private:
    void reduce();
    CtxPtr ctx_;
    std::vector<Int> c_;
    int prec_ = 0;
};

// The Frobenius lift: identity on Z_p, the cached Hensel lift on extensions.
PadicElem frobenius(const PadicElem& a);

// delta(a) = (phi(a) - a^p)/p at precision prec(a)-1.  Requires prec >= 2.
PadicElem fermat_quotient(const PadicElem& a);

// The unique root of x^{p^m} = x congruent to c mod p, at full precision N.
// c is given by its residue coefficients (size 1 when m = 1).
PadicElem teichmuller(const CtxPtr& ctx, const std::vector<Int>& c);
PadicElem teichmuller(const CtxPtr& ctx, const Int& c);

void require_same_ctx(const PadicElem& a, const PadicElem& b);

} // namespace pjet

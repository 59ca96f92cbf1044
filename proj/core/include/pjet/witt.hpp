#pragma once

#include <vector>

#include "pjet/jetspace.hpp"
#include "pjet/poly.hpp"

namespace pjet {

// Universal polynomials for p-typical Witt vectors of length len = m+1,
// derived once per (p, len) by solving the ghost equations over the
// rationals; every division by a power of p is asserted exact (integer
// coefficients), then cached.
class WittUniversal {
public:
    static const WittUniversal& get(long long p, int len);

    long long p() const { return p_; }
    int len() const { return len_; }
    const VarsPtr& vars() const { return vars_; } // a0..a_{len-1}, b0..b_{len-1}

    const std::vector<DeltaPoly>& ghost() const { return ghost_; }
    const std::vector<DeltaPoly>& sum() const { return sum_; }
    const std::vector<DeltaPoly>& prod() const { return prod_; }
    const std::vector<DeltaPoly>& neg() const { return neg_; }
    const std::vector<DeltaPoly>& frob() const { return frob_; } // len-1 entries
    const std::vector<DeltaPoly>& mulp() const { return mulp_; } // p * a
    // (p*a)_k = p*a_k + mulp_tail[k](a_0..a_{k-1})
    const std::vector<DeltaPoly>& mulp_tail() const { return mulp_tail_; }

private:
    WittUniversal(long long p, int len);
    long long p_;
    int len_;
    VarsPtr vars_;
    std::vector<DeltaPoly> ghost_, sum_, prod_, neg_, frob_, mulp_, mulp_tail_;
};

// --- component shims: numeric (PadicElem) and exact (Rat) modes -----------

inline PadicElem witt_eval(const DeltaPoly& f, const std::vector<PadicElem>& v) {
    return f.eval(v);
}
inline Rat witt_eval(const DeltaPoly& f, const std::vector<Rat>& v) { return f.eval_rat(v); }

inline PadicElem witt_div_p(const PadicElem& x, long long) { return x.div_exact_p(); }
inline Rat witt_div_p(const Rat& x, long long p) { return x / p; }

inline PadicElem witt_zero_like(const PadicElem& proto) { return PadicElem::zero(proto.ctx()); }
inline Rat witt_zero_like(const Rat&) { return Rat(0); }
inline PadicElem witt_one_like(const PadicElem& proto) { return PadicElem::one(proto.ctx()); }
inline Rat witt_one_like(const Rat&) { return Rat(1); }

inline bool witt_eq(const PadicElem& a, const PadicElem& b) { return a.eq_at_min_prec(b); }
inline bool witt_eq(const Rat& a, const Rat& b) { return a == b; }

// --- ring operations (components of both operands share length) -----------

template <class T>
std::vector<T> witt_apply(const std::vector<DeltaPoly>& polys, int out_len,
                          const std::vector<T>& u, const std::vector<T>& v) {
    const int len = (int)u.size();
    std::vector<T> vals;
    vals.reserve(2 * len);
    for (const auto& x : u) vals.push_back(x);
    if (v.empty()) {
        for (int i = 0; i < len; ++i) vals.push_back(witt_zero_like(u[0]));
    } else {
        for (const auto& x : v) vals.push_back(x);
    }
    std::vector<T> out;
    out.reserve(out_len);
    for (int k = 0; k < out_len; ++k) out.push_back(witt_eval(polys[k], vals));
    return out;
}

template <class T>
std::vector<T> witt_add(long long p, const std::vector<T>& u, const std::vector<T>& v) {
    if (u.size() != v.size()) throw LengthMismatch("witt operands of different length");
    const auto& U = WittUniversal::get(p, (int)u.size());
    return witt_apply(U.sum(), U.len(), u, v);
}

template <class T>
std::vector<T> witt_mul(long long p, const std::vector<T>& u, const std::vector<T>& v) {
    if (u.size() != v.size()) throw LengthMismatch("witt operands of different length");
    const auto& U = WittUniversal::get(p, (int)u.size());
    return witt_apply(U.prod(), U.len(), u, v);
}

template <class T>
std::vector<T> witt_neg(long long p, const std::vector<T>& u) {
    const auto& U = WittUniversal::get(p, (int)u.size());
    return witt_apply(U.neg(), U.len(), u, {});
}

template <class T>
std::vector<T> witt_sub(long long p, const std::vector<T>& u, const std::vector<T>& v) {
    return witt_add(p, u, witt_neg(p, v));
}

template <class T>
std::vector<T> witt_ghost(long long p, const std::vector<T>& u) {
    const auto& U = WittUniversal::get(p, (int)u.size());
    return witt_apply(U.ghost(), U.len(), u, {});
}

// F: W_m -> W_{m-1}, ghost shift
template <class T>
std::vector<T> witt_frobenius(long long p, const std::vector<T>& u) {
    if (u.size() < 2) throw LengthMismatch("Frobenius needs length >= 2");
    const auto& U = WittUniversal::get(p, (int)u.size());
    return witt_apply(U.frob(), U.len() - 1, u, {});
}

// V: W_{m-1} -> W_m, component shift
template <class T>
std::vector<T> witt_verschiebung(const std::vector<T>& u) {
    std::vector<T> out;
    out.push_back(witt_zero_like(u[0]));
    for (const auto& x : u) out.push_back(x);
    return out;
}

template <class T>
std::vector<T> witt_one(const std::vector<T>& proto) {
    std::vector<T> r(proto.size(), witt_zero_like(proto[0]));
    r[0] = witt_one_like(proto[0]);
    return r;
}

template <class T>
std::vector<T> witt_pow(long long p, std::vector<T> base, Int e) {
    std::vector<T> r = witt_one(base);
    while (e > 0) {
        if ((e & 1) != 0) r = witt_mul(p, r, base);
        e >>= 1;
        if (e > 0) base = witt_mul(p, base, base);
    }
    return r;
}

template <class T>
std::vector<T> witt_mul_by_p(long long p, const std::vector<T>& u) {
    const auto& U = WittUniversal::get(p, (int)u.size());
    return witt_apply(U.mulp(), U.len(), u, {});
}

// exact division by p in the Witt ring (u must be p * something)
template <class T>
std::vector<T> witt_div_by_p(long long p, const std::vector<T>& u) {
    const auto& U = WittUniversal::get(p, (int)u.size());
    std::vector<T> v;
    for (int k = 0; k < U.len(); ++k) {
        std::vector<T> padded = v;
        padded.resize(u.size(), witt_zero_like(u[0]));
        std::vector<T> tail_vals = witt_apply(U.mulp_tail(), U.len(), padded, {});
        v.push_back(witt_div_p(u[k] - tail_vals[k], p));
    }
    return v;
}

// Witt vector of an integer n (image of n under Z -> W_m(R))
std::vector<Rat> witt_of_int(long long p, int len, const Int& n);

// the splitting a |-> (a, delta a, ...) with ghost_k = phi^k(a)
std::vector<PadicElem> witt_splitting(const PadicElem& a, int len);
std::vector<Rat> witt_splitting_exact(long long p, const Rat& a, int len);

// W_{m'+m''}(R) -> W_{m'}(W_{m''}(R)): outer ghost_i of the image equals
// F^i(u) truncated to length m''+1.  Numeric mode loses digits to the
// divisions by p^i; use enough working precision.
template <class T>
std::vector<std::vector<T>> comonad_map(long long p, const std::vector<T>& u,
                                        int m_outer, int m_inner, int cap = 6) {
    if ((int)u.size() != m_outer + m_inner + 1)
        throw LengthMismatch("comonad input must have length m'+m''+1");
    if (m_outer + m_inner + 1 > cap) throw CapExceeded("comonad length beyond cap");
    const int inner_len = m_inner + 1;
    std::vector<std::vector<T>> frob_iter;
    frob_iter.push_back(std::vector<T>(u.begin(), u.begin() + inner_len));
    std::vector<T> cur = u;
    for (int i = 1; i <= m_outer; ++i) {
        cur = witt_frobenius(p, cur);
        frob_iter.push_back(std::vector<T>(cur.begin(), cur.begin() + inner_len));
    }
    std::vector<std::vector<T>> out;
    for (int i = 0; i <= m_outer; ++i) {
        std::vector<T> acc = frob_iter[i];
        for (int j = 0; j < i; ++j) {
            std::vector<T> t = witt_pow(p, out[j], int_pow(Int(p), (unsigned long)(i - j)));
            for (int s = 0; s < j; ++s) t = witt_mul_by_p(p, t);
            acc = witt_sub(p, acc, t);
        }
        for (int s = 0; s < i; ++s) acc = witt_div_by_p(p, acc);
        out.push_back(acc);
    }
    return out;
}

// report of the a |-> (a, delta a) homomorphism check
struct W1HomReport {
    bool ok = true;
    int pairs_checked = 0;
};
W1HomReport w1_hom_check(const std::vector<PadicElem>& sample);

// Generators-and-relations presentation of W_m(R): generators v_1..v_m,
// relations v_i v_j = p^i v_j (i <= j), verified against exact Witt
// arithmetic (basis products and random algebra samples) before being
// returned; PresentationUnverified on any mismatch.
SchemePresentation witt_presentation(long long p, int m);

} // namespace pjet

#include "pjet/padic.hpp"

#include <algorithm>
#include <sstream>

namespace pjet {

namespace {

Int mod_reduce(const Int& v, const Int& M) {
    Int r = v % M;
    if (r < 0) r += M;
    return r;
}

// ---- F_p[t] helpers for context validation and mod-p inversion ----

using FpPoly = std::vector<long long>; // coefficients in [0, p), constant first

FpPoly fp_trim(FpPoly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, long long p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return fp_trim(r);
}

long long fp_inv_scalar(long long a, long long p) {
    long long t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        long long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    return t < 0 ? t + p : t;
}

// division with remainder by a nonzero divisor
void fp_divmod(FpPoly a, const FpPoly& b, long long p, FpPoly& q, FpPoly& rem) {
    q.assign(a.size(), 0);
    long long binv = fp_inv_scalar(b.back(), p);
    while (a.size() >= b.size() && !fp_trim(a).empty()) {
        a = fp_trim(a);
        if (a.size() < b.size()) break;
        size_t shift = a.size() - b.size();
        long long c = a.back() * binv % p;
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    }
    rem = fp_trim(a);
    q = fp_trim(q);
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& b, long long p) {
    FpPoly q, r;
    fp_divmod(a, b, p, q, r);
    return r;
}

FpPoly fp_powmod(FpPoly base, Int e, const FpPoly& mod, long long p) {
    FpPoly r{1};
    base = fp_mod(base, mod, p);
    while (e > 0) {
        if ((e & 1) != 0) r = fp_mod(fp_mul(r, base, p), mod, p);
        base = fp_mod(fp_mul(base, base, p), mod, p);
        e >>= 1;
    }
    return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, long long p) {
    a = fp_trim(a);
    b = fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_mod(a, b, p);
        a = b;
        b = r;
    }
    return a;
}

// extended Euclid: returns g and u with u*a = g mod m (g scalar gcd poly)
void fp_ext_inverse(const FpPoly& a, const FpPoly& m, long long p, FpPoly& inv) {
    FpPoly r0 = m, r1 = fp_mod(a, m, p);
    FpPoly s0{}, s1{1};
    while (!fp_trim(r1).empty()) {
        FpPoly q, rem;
        fp_divmod(r0, r1, p, q, rem);
        FpPoly qs = fp_mul(q, s1, p);
        FpPoly ns(std::max(s0.size(), qs.size()), 0);
        for (size_t i = 0; i < ns.size(); ++i) {
            long long x = (i < s0.size() ? s0[i] : 0) - (i < qs.size() ? qs[i] : 0);
            ns[i] = ((x % p) + p) % p;
        }
        r0 = r1; r1 = rem;
        s0 = s1; s1 = fp_trim(ns);
    }
    // r0 is the gcd; must be a nonzero scalar for a to be invertible
    if (fp_trim(r0).size() != 1) throw NotInvertible("non-unit in residue extension");
    long long c = fp_inv_scalar(r0[0], p);
    inv = s0;
    for (auto& x : inv) x = x * c % p;
}

bool fp_irreducible(const FpPoly& f, long long p) {
    // f monic of degree m: irreducible iff t^{p^m} = t mod f and
    // gcd(t^{p^{m/ell}} - t, f) = 1 for every prime ell | m.
    size_t m = f.size() - 1;
    FpPoly t{0, 1};
    FpPoly tq = fp_powmod(t, int_pow(Int(p), (unsigned long)m), f, p);
    FpPoly diff = tq;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    if (!fp_trim(diff).empty()) return false;
    for (size_t ell = 2; ell <= m; ++ell) {
        if (m % ell != 0) continue;
        bool is_pr = true;
        for (size_t d = 2; d * d <= ell; ++d)
            if (ell % d == 0) { is_pr = false; break; }
        if (!is_pr) continue;
        FpPoly te = fp_powmod(t, int_pow(Int(p), (unsigned long)(m / ell)), f, p);
        FpPoly d2 = te;
        if (d2.size() < 2) d2.resize(2, 0);
        d2[1] = ((d2[1] - 1) % p + p) % p;
        if (fp_gcd(d2, f, p).size() != 1) return false;
    }
    return true;
}

} // namespace

// ---------------------------------------------------------------------------
// PadicCtx
// ---------------------------------------------------------------------------

CtxPtr PadicCtx::make(long long p, int N) {
    if (!is_prime_u64((unsigned long long)p)) throw DomainError("p must be prime, got " + std::to_string(p));
    if (N < 1) throw DomainError("precision N must be >= 1");
    auto ctx = std::shared_ptr<PadicCtx>(new PadicCtx());
    ctx->p_ = p;
    ctx->N_ = N;
    ctx->m_ = 1;
    ctx->ppows_.resize(N + 1);
    ctx->ppows_[0] = 1;
    for (int i = 1; i <= N; ++i) ctx->ppows_[i] = ctx->ppows_[i - 1] * p;
    return ctx;
}

namespace {

// polynomial multiplication mod (modulus, p^k), coefficients constant-first
std::vector<Int> ext_mul_raw(const std::vector<Int>& a, const std::vector<Int>& b,
                             const std::vector<Int>& modulus, const Int& pk) {
    int m = (int)modulus.size() - 1;
    std::vector<Int> prod(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            prod[i + j] += a[i] * b[j];
    // reduce by the monic modulus
    for (int d = (int)prod.size() - 1; d >= m; --d) {
        Int c = prod[d] % pk;
        if (c == 0) { prod[d] = 0; continue; }
        for (int i = 0; i < m; ++i)
            prod[d - m + i] -= c * modulus[i];
        prod[d] = 0;
    }
    prod.resize(m);
    for (auto& c : prod) c = mod_reduce(c, pk);
    return prod;
}

std::vector<Int> ext_pow_raw(std::vector<Int> base, Int e,
                             const std::vector<Int>& modulus, const Int& pk) {
    int m = (int)modulus.size() - 1;
    std::vector<Int> r(m, Int(0));
    r[0] = 1;
    while (e > 0) {
        if ((e & 1) != 0) r = ext_mul_raw(r, base, modulus, pk);
        base = ext_mul_raw(base, base, modulus, pk);
        e >>= 1;
    }
    return r;
}

} // namespace

CtxPtr PadicCtx::make_ext(long long p, int N, const std::vector<Int>& ext_modulus) {
    if (ext_modulus.size() < 3) {
        if (ext_modulus.empty()) return make(p, N);
        throw DomainError("ext_modulus must have degree >= 2");
    }
    if (!is_prime_u64((unsigned long long)p)) throw DomainError("p must be prime");
    if (N < 1) throw DomainError("precision N must be >= 1");
    if (ext_modulus.back() != 1) throw DomainError("ext_modulus must be monic");

    auto ctx = std::shared_ptr<PadicCtx>(new PadicCtx());
    ctx->p_ = p;
    ctx->N_ = N;
    ctx->m_ = (int)ext_modulus.size() - 1;
    ctx->ppows_.resize(N + 1);
    ctx->ppows_[0] = 1;
    for (int i = 1; i <= N; ++i) ctx->ppows_[i] = ctx->ppows_[i - 1] * p;
    ctx->modulus_.resize(ext_modulus.size());
    for (size_t i = 0; i < ext_modulus.size(); ++i)
        ctx->modulus_[i] = mod_reduce(ext_modulus[i], ctx->ppows_[N]);
    ctx->modulus_.back() = 1;

    FpPoly fbar(ext_modulus.size());
    for (size_t i = 0; i < ext_modulus.size(); ++i)
        fbar[i] = (long long)(mod_reduce(ext_modulus[i], Int(p)));
    if (!fp_irreducible(fbar, p))
        throw DomainError("ext_modulus is reducible mod p");

    // Hensel-lift the Frobenius image of the generator: the root of the
    // modulus congruent to t^p mod p.  Newton in the extension ring itself.
    const int m = ctx->m_;
    const Int& pN = ctx->ppows_[N];
    std::vector<Int> x = ext_pow_raw([&] {
        std::vector<Int> t(m, Int(0));
        t[1 % m] = 1;
        return t;
    }(), Int(p), ctx->modulus_, pN);

    auto eval_poly = [&](const std::vector<Int>& coeffs, const std::vector<Int>& at) {
        std::vector<Int> acc(m, Int(0)); // Horner over the extension
        for (int d = (int)coeffs.size() - 1; d >= 0; --d) {
            acc = ext_mul_raw(acc, at, ctx->modulus_, pN);
            acc[0] = mod_reduce(acc[0] + coeffs[d], pN);
        }
        return acc;
    };
    std::vector<Int> deriv(m);
    for (int d = 1; d <= m; ++d) deriv[d - 1] = mod_reduce(Int(d) * ctx->modulus_[d], pN);

    auto ext_inverse = [&](const std::vector<Int>& a) {
        FpPoly abar(m);
        for (int i = 0; i < m; ++i) abar[i] = (long long)(a[i] % p);
        FpPoly ibar;
        fp_ext_inverse(fp_trim(abar), fbar, p, ibar);
        std::vector<Int> inv(m, Int(0));
        for (size_t i = 0; i < ibar.size(); ++i) inv[i] = ibar[i];
        // Newton lift of the inverse: y <- y(2 - a y), doubling digits
        for (int have = 1; have < N; have *= 2) {
            auto ay = ext_mul_raw(a, inv, ctx->modulus_, pN);
            std::vector<Int> two_minus(m, Int(0));
            for (int i = 0; i < m; ++i) two_minus[i] = mod_reduce(-ay[i], pN);
            two_minus[0] = mod_reduce(two_minus[0] + 2, pN);
            inv = ext_mul_raw(inv, two_minus, ctx->modulus_, pN);
        }
        return inv;
    };

    for (int have = 1; have < N; have *= 2) {
        auto fx = eval_poly(ctx->modulus_, x);
        auto dfx = eval_poly(deriv, x);
        auto corr = ext_mul_raw(fx, ext_inverse(dfx), ctx->modulus_, pN);
        for (int i = 0; i < m; ++i) x[i] = mod_reduce(x[i] - corr[i], pN);
    }

    ctx->frob_pows_.resize(m);
    ctx->frob_pows_[0].assign(m, Int(0));
    ctx->frob_pows_[0][0] = 1;
    for (int i = 1; i < m; ++i)
        ctx->frob_pows_[i] = ext_mul_raw(ctx->frob_pows_[i - 1], x, ctx->modulus_, pN);
    return ctx;
}

const Int& PadicCtx::p_pow(int k) const {
    if (k < 0 || k > N_) throw DomainError("p_pow exponent out of range");
    return ppows_[k];
}

// ---------------------------------------------------------------------------
// PadicElem
// ---------------------------------------------------------------------------

PadicElem::PadicElem(CtxPtr ctx, const Int& value) : PadicElem(std::move(ctx), value, 0) {
    prec_ = ctx_->precision();
    reduce();
}

PadicElem::PadicElem(CtxPtr ctx, const Int& value, int prec) : ctx_(std::move(ctx)), prec_(prec) {
    c_.assign(ctx_->ext_degree(), Int(0));
    c_[0] = value;
    if (prec_ > 0) reduce();
}

PadicElem PadicElem::from_coeffs(CtxPtr ctx, std::vector<Int> coeffs, int prec) {
    PadicElem e;
    e.ctx_ = std::move(ctx);
    coeffs.resize(e.ctx_->ext_degree(), Int(0));
    e.c_ = std::move(coeffs);
    e.prec_ = prec;
    e.reduce();
    return e;
}

PadicElem PadicElem::from_rational(const CtxPtr& ctx, const Rat& r) {
    Int den = rat_den(r);
    if (den % ctx->p() == 0)
        throw DomainError("rational has negative p-valuation, not a p-adic integer");
    PadicElem num(ctx, rat_num(r));
    PadicElem d(ctx, den);
    return num * d.inverse();
}

void PadicElem::reduce() {
    if (prec_ < 1) throw InsufficientPrecision("element precision must be >= 1");
    if (prec_ > ctx_->precision()) prec_ = ctx_->precision();
    const Int& pk = ctx_->p_pow(prec_);
    for (auto& c : c_) c = mod_reduce(c, pk);
}

bool PadicElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Int& x) { return x == 0; });
}

bool PadicElem::is_unit() const {
    Int p = ctx_->p();
    return std::any_of(c_.begin(), c_.end(), [&](const Int& x) { return x % p != 0; });
}

int PadicElem::valuation() const {
    int v = prec_;
    for (const auto& c : c_) {
        if (c == 0) continue;
        int vc = 0;
        Int x = c;
        while (x % ctx_->p() == 0 && vc < prec_) { x /= ctx_->p(); ++vc; }
        v = std::min(v, vc);
    }
    return v;
}

PadicElem PadicElem::with_prec(int prec) const {
    if (prec > prec_) throw InsufficientPrecision("cannot raise precision");
    PadicElem r = *this;
    r.prec_ = prec;
    r.reduce();
    return r;
}

PadicElem PadicElem::operator-() const {
    PadicElem r = *this;
    for (auto& c : r.c_) c = mod_reduce(-c, ctx_->p_pow(prec_));
    return r;
}

PadicElem PadicElem::operator+(const PadicElem& o) const {
    require_same_ctx(*this, o);
    PadicElem r = *this;
    r.prec_ = std::min(prec_, o.prec_);
    for (int i = 0; i < (int)c_.size(); ++i) r.c_[i] += o.c_[i];
    r.reduce();
    return r;
}

PadicElem PadicElem::operator-(const PadicElem& o) const {
    require_same_ctx(*this, o);
    PadicElem r = *this;
    r.prec_ = std::min(prec_, o.prec_);
    for (int i = 0; i < (int)c_.size(); ++i) r.c_[i] -= o.c_[i];
    r.reduce();
    return r;
}

PadicElem PadicElem::operator*(const PadicElem& o) const {
    require_same_ctx(*this, o);
    PadicElem r;
    r.ctx_ = ctx_;
    r.prec_ = std::min(prec_, o.prec_);
    if (ctx_->ext_degree() == 1) {
        r.c_.assign(1, mod_reduce(c_[0] * o.c_[0], ctx_->p_pow(r.prec_)));
    } else {
        r.c_ = ext_mul_raw(c_, o.c_, ctx_->ext_modulus(), ctx_->p_pow(r.prec_));
    }
    return r;
}

PadicElem PadicElem::inverse() const {
    if (!is_unit()) throw NotInvertible("p-adic inverse of a non-unit");
    const long long p = ctx_->p();
    if (ctx_->ext_degree() == 1) {
        // extended Euclid mod p^prec
        Int a = c_[0], M = ctx_->p_pow(prec_);
        Int t = 0, nt = 1, r = M, nr = a;
        while (nr != 0) {
            Int q = r / nr;
            Int tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        PadicElem out = *this;
        out.c_[0] = mod_reduce(t, M);
        return out;
    }
    // mod-p inverse in the residue field, then Newton lift
    const int m = ctx_->ext_degree();
    FpPoly abar(m), fbar(m + 1);
    for (int i = 0; i < m; ++i) abar[i] = (long long)(c_[i] % p);
    for (int i = 0; i <= m; ++i) fbar[i] = (long long)(ctx_->ext_modulus()[i] % p);
    FpPoly ibar;
    fp_ext_inverse(fp_trim(abar), fbar, p, ibar);
    std::vector<Int> inv(m, Int(0));
    for (size_t i = 0; i < ibar.size(); ++i) inv[i] = ibar[i];
    const Int& pk = ctx_->p_pow(prec_);
    for (int have = 1; have < prec_; have *= 2) {
        auto ay = ext_mul_raw(c_, inv, ctx_->ext_modulus(), pk);
        std::vector<Int> two_minus(m, Int(0));
        for (int i = 0; i < m; ++i) two_minus[i] = mod_reduce(-ay[i], pk);
        two_minus[0] = mod_reduce(two_minus[0] + 2, pk);
        inv = ext_mul_raw(inv, two_minus, ctx_->ext_modulus(), pk);
    }
    PadicElem out = *this;
    out.c_ = inv;
    return out;
}

PadicElem PadicElem::pow(Int e) const {
    if (e < 0) return inverse().pow(-e);
    PadicElem base = *this;
    PadicElem r(ctx_, 1, prec_);
    while (e > 0) {
        if ((e & 1) != 0) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

PadicElem PadicElem::div_exact_p() const {
    if (prec_ < 2) throw InsufficientPrecision("division by p needs precision >= 2");
    const Int p(ctx_->p());
    PadicElem r = *this;
    for (auto& c : r.c_) {
        if (c % p != 0) throw InexactDivision("argument is a unit, not divisible by p");
        c /= p;
    }
    r.prec_ = prec_ - 1;
    return r;
}

PadicElem PadicElem::divide_exact(const PadicElem& b) const {
    require_same_ctx(*this, b);
    int vb = b.valuation();
    if (vb >= b.prec()) throw NotInvertible("divisor indistinguishable from 0");
    PadicElem num = *this, den = b;
    for (int i = 0; i < vb; ++i) {
        num = num.div_exact_p();
        den = den.div_exact_p();
    }
    return num * den.inverse();
}

bool PadicElem::eq_at_min_prec(const PadicElem& o) const {
    require_same_ctx(*this, o);
    return eq_mod(o, std::min(prec_, o.prec_));
}

bool PadicElem::eq_mod(const PadicElem& o, int digits) const {
    require_same_ctx(*this, o);
    if (digits > std::min(prec_, o.prec_))
        throw InsufficientPrecision("comparison beyond known digits");
    const Int& pk = ctx_->p_pow(digits);
    for (int i = 0; i < (int)c_.size(); ++i)
        if (mod_reduce(c_[i] - o.c_[i], pk) != 0) return false;
    return true;
}

Int PadicElem::balanced() const {
    if (ctx_->ext_degree() != 1) throw DomainError("balanced representative needs m = 1");
    const Int& pk = ctx_->p_pow(prec_);
    Int v = c_[0];
    if (2 * v > pk) v -= pk;
    return v;
}

std::string PadicElem::to_string() const {
    std::ostringstream os;
    if (ctx_->ext_degree() == 1) {
        os << c_[0];
    } else {
        os << "[";
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) os << ",";
            os << c_[i];
        }
        os << "]";
    }
    os << " (mod " << ctx_->p() << "^" << prec_ << ")";
    return os.str();
}

void require_same_ctx(const PadicElem& a, const PadicElem& b) {
    if (!a.ctx() || !b.ctx() || !a.ctx()->same(*b.ctx()))
        throw ContextMismatch("operands from different p-adic contexts");
}

// ---------------------------------------------------------------------------
// Frobenius, Fermat quotient, Teichmueller
// ---------------------------------------------------------------------------

PadicElem frobenius(const PadicElem& a) {
    const auto& ctx = a.ctx();
    if (ctx->ext_degree() == 1) return a;
    const auto& pows = ctx->frobenius_generator_powers();
    const Int& pk = ctx->p_pow(a.prec());
    std::vector<Int> out(ctx->ext_degree(), Int(0));
    for (int i = 0; i < ctx->ext_degree(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        for (int j = 0; j < ctx->ext_degree(); ++j)
            out[j] = (out[j] + a.coeffs()[i] * pows[i][j]) % pk;
    }
    return PadicElem::from_coeffs(ctx, std::move(out), a.prec());
}

PadicElem fermat_quotient(const PadicElem& a) {
    if (a.prec() < 2) throw InsufficientPrecision("fermat quotient needs precision >= 2");
    PadicElem num = frobenius(a) - a.pow(a.ctx()->p());
    return num.div_exact_p();
}

PadicElem teichmuller(const CtxPtr& ctx, const std::vector<Int>& c) {
    PadicElem x = PadicElem::from_coeffs(ctx, c, ctx->precision());
    if (x.is_zero()) return x;
    Int q = int_pow(Int(ctx->p()), (unsigned long)ctx->ext_degree());
    // x -> x^q gains at least one digit per step
    for (int i = 0; i < ctx->precision(); ++i) x = x.pow(q);
    return x;
}

PadicElem teichmuller(const CtxPtr& ctx, const Int& c) {
    return teichmuller(ctx, std::vector<Int>{c});
}

} // namespace pjet

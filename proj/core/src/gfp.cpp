#include "pjet/gfp.hpp"

namespace pjet {

long long gfp_inv(long long a, long long p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) throw NotInvertible("zero has no inverse mod p");
    long long t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    return t < 0 ? t + p : t;
}

bool GrevlexLess::operator()(const Mono& a, const Mono& b) const {
    long long da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da < db;
    // grevlex tie-break: larger is the one whose last nonzero difference is negative
    for (int i = (int)a.size() - 1; i >= 0; --i) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

void GFpPoly::add_term(const Mono& m, long long c) {
    c %= p_;
    if (c < 0) c += p_;
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second = (it->second + c) % p_;
        if (it->second == 0) terms_.erase(it);
    }
}

const Mono& GFpPoly::lead_mono() const {
    if (terms_.empty()) throw DomainError("lead of zero polynomial");
    return terms_.rbegin()->first;
}

long long GFpPoly::lead_coeff() const {
    if (terms_.empty()) throw DomainError("lead of zero polynomial");
    return terms_.rbegin()->second;
}

long long GFpPoly::total_degree() const {
    long long d = 0;
    for (const auto& [m, c] : terms_) {
        long long t = 0;
        for (auto e : m) t += e;
        d = std::max(d, t);
    }
    return d;
}

GFpPoly GFpPoly::operator+(const GFpPoly& o) const {
    GFpPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

GFpPoly GFpPoly::operator-(const GFpPoly& o) const {
    GFpPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, p_ - c);
    return r;
}

GFpPoly GFpPoly::operator*(const GFpPoly& o) const {
    GFpPoly r(p_, nvars_);
    Mono m(nvars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            for (int i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb % p_);
        }
    }
    return r;
}

GFpPoly GFpPoly::scaled(long long c) const {
    GFpPoly r(p_, nvars_);
    for (const auto& [m, cc] : terms_) r.add_term(m, cc * (c % p_) % p_);
    return r;
}

GFpPoly GFpPoly::mul_term(const Mono& m, long long c) const {
    GFpPoly r(p_, nvars_);
    Mono t(nvars_);
    for (const auto& [mm, cc] : terms_) {
        for (int i = 0; i < nvars_; ++i) t[i] = mm[i] + m[i];
        r.add_term(t, cc * (c % p_) % p_);
    }
    return r;
}

GFpPoly to_gfp(const DeltaPoly& f) {
    long long p = f.vars()->p();
    GFpPoly r(p, f.vars()->nvars());
    for (const auto& [m, c] : f.terms()) {
        for (auto e : m)
            if (e < 0) throw DomainError("negative exponent has no mod-p polynomial image");
        Int num = rat_num(c) % p, den = rat_den(c) % p;
        if (den == 0) throw NonIntegralInput("coefficient has p in denominator");
        long long n = (long long)(num < 0 ? num + p : num);
        r.add_term(m, n * gfp_inv((long long)den, p) % p);
    }
    return r;
}

DeltaPoly lift_gfp(const GFpPoly& f, const VarsPtr& vars) {
    DeltaPoly r(vars);
    for (const auto& [m, c] : f.terms()) r.add_term(m, Rat(c));
    return r;
}

} // namespace pjet

#pragma once

#include <map>
#include <vector>

#include "pjet/poly.hpp"

namespace pjet {

long long gfp_inv(long long a, long long p);

struct GrevlexLess {
    bool operator()(const Mono& a, const Mono& b) const;
};

// Sparse polynomial over F_p.  Monomial order is grevlex (internal to the
// Groebner engine; unrelated to the jet-ring print order).
class GFpPoly {
public:
    using TermMap = std::map<Mono, long long, GrevlexLess>;

    GFpPoly() = default;
    GFpPoly(long long p, int nvars) : p_(p), nvars_(nvars) {}

    long long p() const { return p_; }
    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Mono& m, long long c);
    const Mono& lead_mono() const;
    long long lead_coeff() const;
    long long total_degree() const;

    GFpPoly operator+(const GFpPoly& o) const;
    GFpPoly operator-(const GFpPoly& o) const;
    GFpPoly operator*(const GFpPoly& o) const;
    GFpPoly scaled(long long c) const;
    GFpPoly mul_term(const Mono& m, long long c) const;

    bool operator==(const GFpPoly& o) const {
        return p_ == o.p_ && terms_ == o.terms_;
    }

private:
    long long p_ = 2;
    int nvars_ = 0;
    TermMap terms_;
};

// reduction mod p; coefficients must be p-integral (denominator inverted mod p)
GFpPoly to_gfp(const DeltaPoly& f);
// lift with coefficients in [0, p)
DeltaPoly lift_gfp(const GFpPoly& f, const VarsPtr& vars);

} // namespace pjet

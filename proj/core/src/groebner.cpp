#include "pjet/groebner.hpp"

#include <algorithm>
#include <deque>

namespace pjet {

namespace {

bool divides(const Mono& a, const Mono& b) { // a | b
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Mono lcm(const Mono& a, const Mono& b) {
    Mono r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

Mono quotient(const Mono& a, const Mono& b) { // a / b
    Mono r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

long long mono_degree(const Mono& m) {
    long long d = 0;
    for (auto e : m) d += e;
    return d;
}

} // namespace

Groebner Groebner::compute(const std::vector<GFpPoly>& gens, const GBCaps& caps) {
    Groebner g;
    if (gens.empty()) throw DomainError("Groebner of empty generator list");
    g.p_ = gens[0].p();
    g.nvars_ = gens[0].nvars();
    g.n_orig_ = (int)gens.size();

    for (int j = 0; j < (int)gens.size(); ++j) {
        if (gens[j].is_zero()) continue;
        g.basis_.push_back(gens[j]);
        std::vector<GFpPoly> rep((size_t)gens.size(), GFpPoly(g.p_, g.nvars_));
        rep[j].add_term(Mono(g.nvars_, 0), 1);
        g.reps_.push_back(std::move(rep));
    }
    if (g.basis_.empty()) {
        // zero ideal: keep one zero generator so normal_form works
        g.basis_.push_back(GFpPoly(g.p_, g.nvars_));
        g.reps_.push_back(std::vector<GFpPoly>((size_t)gens.size(), GFpPoly(g.p_, g.nvars_)));
        return g;
    }

    std::deque<std::pair<int, int>> pairs;
    for (int i = 0; i < (int)g.basis_.size(); ++i)
        for (int j = i + 1; j < (int)g.basis_.size(); ++j)
            pairs.emplace_back(i, j);

    long long processed = 0;
    while (!pairs.empty()) {
        if (++processed > caps.pair_cap) throw CapExceeded("Groebner pair budget exhausted");
        auto [i, j] = pairs.front();
        pairs.pop_front();
        const Mono &li = g.basis_[i].lead_mono(), &lj = g.basis_[j].lead_mono();
        Mono L = lcm(li, lj);
        // product criterion
        if (mono_degree(L) == mono_degree(li) + mono_degree(lj)) continue;
        if (mono_degree(L) > caps.degree_cap)
            throw DegreeBoundExceeded("Groebner S-pair degree " + std::to_string(mono_degree(L)));

        long long ci = gfp_inv(g.basis_[i].lead_coeff(), g.p_);
        long long cj = gfp_inv(g.basis_[j].lead_coeff(), g.p_);
        GFpPoly s = g.basis_[i].mul_term(quotient(L, li), ci) -
                    g.basis_[j].mul_term(quotient(L, lj), cj);
        std::vector<GFpPoly> srep((size_t)g.n_orig_, GFpPoly(g.p_, g.nvars_));
        for (int k = 0; k < g.n_orig_; ++k)
            srep[k] = g.reps_[i][k].mul_term(quotient(L, li), ci) -
                      g.reps_[j][k].mul_term(quotient(L, lj), cj);

        // full reduction by current basis, tracking the combination
        bool reduced = true;
        while (reduced && !s.is_zero()) {
            reduced = false;
            for (int b = 0; b < (int)g.basis_.size(); ++b) {
                if (g.basis_[b].is_zero()) continue;
                const Mono& lb = g.basis_[b].lead_mono();
                // reduce the largest reducible term
                for (auto it = s.terms().rbegin(); it != s.terms().rend(); ++it) {
                    if (!divides(lb, it->first)) continue;
                    long long f = it->second * gfp_inv(g.basis_[b].lead_coeff(), g.p_) % g.p_;
                    Mono q = quotient(it->first, lb);
                    s = s - g.basis_[b].mul_term(q, f);
                    for (int k = 0; k < g.n_orig_; ++k)
                        srep[k] = srep[k] - g.reps_[b][k].mul_term(q, f);
                    reduced = true;
                    break;
                }
                if (reduced) break;
            }
        }
        if (!s.is_zero()) {
            if (s.total_degree() > caps.degree_cap)
                throw DegreeBoundExceeded("Groebner basis degree " + std::to_string(s.total_degree()));
            g.basis_.push_back(s);
            g.reps_.push_back(std::move(srep));
            int n = (int)g.basis_.size() - 1;
            for (int k = 0; k < n; ++k) pairs.emplace_back(k, n);
        }
    }
    return g;
}

GFpPoly Groebner::normal_form(const GFpPoly& f, std::vector<GFpPoly>* combo) const {
    if (combo) combo->assign((size_t)n_orig_, GFpPoly(p_, nvars_));
    GFpPoly r = f;
    bool reduced = true;
    while (reduced && !r.is_zero()) {
        reduced = false;
        for (int b = 0; b < (int)basis_.size(); ++b) {
            if (basis_[b].is_zero()) continue;
            const Mono& lb = basis_[b].lead_mono();
            for (auto it = r.terms().rbegin(); it != r.terms().rend(); ++it) {
                if (!divides(lb, it->first)) continue;
                long long c = it->second * gfp_inv(basis_[b].lead_coeff(), p_) % p_;
                Mono q = quotient(it->first, lb);
                r = r - basis_[b].mul_term(q, c);
                if (combo)
                    for (int k = 0; k < n_orig_; ++k)
                        (*combo)[k] = (*combo)[k] + reps_[b][k].mul_term(q, c);
                reduced = true;
                break;
            }
            if (reduced) break;
        }
    }
    return r;
}

bool Groebner::contains(const GFpPoly& f) const { return normal_form(f).is_zero(); }

} // namespace pjet

#include "pjet/witt.hpp"

#include <map>
#include <mutex>
#include <random>

namespace pjet {

namespace {

DeltaPoly exact_scaled_div(const DeltaPoly& f, const Int& pk) {
    DeltaPoly r = f.scaled(Rat(1) / Rat(pk));
    if (!r.is_integral())
        throw InexactDivision("universal Witt polynomial division left a denominator");
    return r;
}

} // namespace

WittUniversal::WittUniversal(long long p, int len) : p_(p), len_(len) {
    std::vector<std::string> names;
    for (int i = 0; i < len; ++i) names.push_back("a" + std::to_string(i));
    for (int i = 0; i < len; ++i) names.push_back("b" + std::to_string(i));
    vars_ = JetVarSet::make(names, 0, p);

    auto avar = [&](int i) { return DeltaPoly::variable(vars_, i, 0); };
    auto bvar = [&](int i) { return DeltaPoly::variable(vars_, len + i, 0); };

    // ghost_k(x) = sum_{j<=k} p^j x_j^{p^{k-j}}
    auto ghost_of = [&](auto var, int k) {
        DeltaPoly g = DeltaPoly::zero(vars_);
        for (int j = 0; j <= k; ++j) {
            unsigned long e = (unsigned long)int_pow(Int(p), (unsigned long)(k - j));
            g += var(j).pow(e).scaled(Rat(int_pow(Int(p), (unsigned long)j)));
        }
        return g;
    };
    for (int k = 0; k < len; ++k) ghost_.push_back(ghost_of(avar, k));

    // solve ghost_k(S) = target_k for S, peeling one component at a time
    auto solve = [&](const std::vector<DeltaPoly>& target, int out_len) {
        std::vector<DeltaPoly> S;
        for (int k = 0; k < out_len; ++k) {
            DeltaPoly acc = target[k];
            for (int j = 0; j < k; ++j) {
                unsigned long e = (unsigned long)int_pow(Int(p), (unsigned long)(k - j));
                acc -= S[j].pow(e).scaled(Rat(int_pow(Int(p), (unsigned long)j)));
            }
            S.push_back(exact_scaled_div(acc, int_pow(Int(p), (unsigned long)k)));
        }
        return S;
    };

    std::vector<DeltaPoly> t_sum, t_prod, t_neg, t_frob, t_mulp;
    for (int k = 0; k < len; ++k) {
        t_sum.push_back(ghost_of(avar, k) + ghost_of(bvar, k));
        t_prod.push_back(ghost_of(avar, k) * ghost_of(bvar, k));
        t_neg.push_back(-ghost_of(avar, k));
        t_mulp.push_back(ghost_of(avar, k).scaled(Rat(p)));
    }
    for (int k = 0; k + 1 < len; ++k) t_frob.push_back(ghost_of(avar, k + 1));

    sum_ = solve(t_sum, len);
    prod_ = solve(t_prod, len);
    neg_ = solve(t_neg, len);
    frob_ = solve(t_frob, len - 1);
    mulp_ = solve(t_mulp, len);
    for (int k = 0; k < len; ++k)
        mulp_tail_.push_back(mulp_[k] - avar(k).scaled(Rat(p)));
}

const WittUniversal& WittUniversal::get(long long p, int len) {
    if (len < 1) throw LengthMismatch("Witt length must be >= 1");
    static std::mutex mu;
    static std::map<std::pair<long long, int>, std::unique_ptr<WittUniversal>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, len);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::unique_ptr<WittUniversal>(new WittUniversal(p, len))).first;
    return *it->second;
}

std::vector<Rat> witt_of_int(long long p, int len, const Int& n) {
    // ghost components all equal n
    std::vector<Rat> x;
    for (int k = 0; k < len; ++k) {
        Rat acc = Rat(n);
        for (int j = 0; j < k; ++j) {
            Rat pw = x[j];
            Int e = int_pow(Int(p), (unsigned long)(k - j));
            Rat t = 1;
            for (Int i = 0; i < e; ++i) t *= pw;
            acc -= t * Rat(int_pow(Int(p), (unsigned long)j));
        }
        x.push_back(acc / Rat(int_pow(Int(p), (unsigned long)k)));
    }
    return x;
}

std::vector<PadicElem> witt_splitting(const PadicElem& a, int len) {
    // ghost_k(s) = phi^k(a)
    const long long p = a.ctx()->p();
    std::vector<PadicElem> s;
    PadicElem phik = a;
    for (int k = 0; k < len; ++k) {
        PadicElem acc = phik;
        for (int j = 0; j < k; ++j) {
            Int e = int_pow(Int(p), (unsigned long)(k - j));
            acc = acc - s[j].pow(e) * PadicElem(a.ctx(), int_pow(Int(p), (unsigned long)j));
        }
        for (int i = 0; i < k; ++i) acc = acc.div_exact_p();
        s.push_back(acc);
        if (k + 1 < len) phik = frobenius(phik);
    }
    return s;
}

std::vector<Rat> witt_splitting_exact(long long p, const Rat& a, int len) {
    std::vector<Rat> s;
    for (int k = 0; k < len; ++k) {
        Rat acc = a; // phi = id on rationals
        for (int j = 0; j < k; ++j) {
            Int e = int_pow(Int(p), (unsigned long)(k - j));
            Rat t = 1;
            for (Int i = 0; i < e; ++i) t *= s[j];
            acc -= t * Rat(int_pow(Int(p), (unsigned long)j));
        }
        s.push_back(acc / Rat(int_pow(Int(p), (unsigned long)k)));
    }
    return s;
}

W1HomReport w1_hom_check(const std::vector<PadicElem>& sample) {
    W1HomReport rep;
    const long long p = sample.empty() ? 2 : sample[0].ctx()->p();
    for (size_t i = 0; i + 1 < sample.size(); i += 2) {
        const PadicElem &a = sample[i], &b = sample[i + 1];
        std::vector<PadicElem> wa{a, fermat_quotient(a)};
        std::vector<PadicElem> wb{b, fermat_quotient(b)};
        auto ws = witt_add(p, wa, wb);
        auto wp = witt_mul(p, wa, wb);
        PadicElem s = a + b, m = a * b;
        std::vector<PadicElem> exp_s{s, fermat_quotient(s)};
        std::vector<PadicElem> exp_p{m, fermat_quotient(m)};
        for (int k = 0; k < 2; ++k) {
            if (!ws[k].eq_at_min_prec(exp_s[k]) || !wp[k].eq_at_min_prec(exp_p[k])) {
                rep.ok = false;
                return rep;
            }
        }
        ++rep.pairs_checked;
    }
    return rep;
}

SchemePresentation witt_presentation(long long p, int m) {
    if (m < 0) throw DomainError("m must be >= 0");
    if (m > 3) throw CapExceeded("witt_presentation supports m <= 3");
    std::vector<std::string> names;
    for (int i = 1; i <= m; ++i) names.push_back("v" + std::to_string(i));
    auto vars = JetVarSet::make(names.empty() ? std::vector<std::string>{"v1"} : names, 0, p);
    if (m == 0) {
        // W_0(R) = R: no generators, no relations
        auto vars0 = JetVarSet::make({}, 0, p);
        return SchemePresentation::make(vars0, {}, "W_0");
    }

    const int len = m + 1;
    auto basis_vec = [&](int i) {
        std::vector<Rat> v(len, Rat(0));
        v[i] = 1;
        return v;
    };

    // verify v_i v_j = p^i v_j for i <= j by exact Witt arithmetic
    for (int i = 1; i <= m; ++i) {
        for (int j = i; j <= m; ++j) {
            auto lhs = witt_mul(p, basis_vec(i), basis_vec(j));
            auto rhs = witt_mul(p, witt_of_int(p, len, int_pow(Int(p), (unsigned long)i)),
                                basis_vec(j));
            if (lhs != rhs)
                throw PresentationUnverified("v_" + std::to_string(i) + "v_" + std::to_string(j));
        }
    }

    // verify the algebra map r0 + sum r_i v_i -> splitting(r0) + sum splitting(r_i)*v_i
    // is multiplicative on random integer samples, using the claimed relations
    // to expand products on the presentation side
    std::mt19937_64 rng(0x77177);
    auto embed = [&](const std::vector<Rat>& coef) {
        auto acc = witt_splitting_exact(p, coef[0], len);
        for (int i = 1; i <= m; ++i) {
            auto t = witt_mul(p, witt_splitting_exact(p, coef[i], len), basis_vec(i));
            acc = witt_add(p, acc, t);
        }
        return acc;
    };
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<Rat> r(m + 1), s(m + 1);
        for (int i = 0; i <= m; ++i) {
            r[i] = Rat((long long)(rng() % 19) - 9);
            s[i] = Rat((long long)(rng() % 19) - 9);
        }
        // product coefficients via the relations v_i v_j = p^i v_j (i <= j)
        std::vector<Rat> t(m + 1, Rat(0));
        t[0] = r[0] * s[0];
        for (int i = 1; i <= m; ++i) {
            t[i] = r[0] * s[i] + r[i] * s[0];
            for (int a = 1; a <= m; ++a)
                for (int b = 1; b <= m; ++b) {
                    if (std::max(a, b) != i) continue;
                    t[i] += r[a] * s[b] * Rat(int_pow(Int(p), (unsigned long)std::min(a, b)));
                }
        }
        auto lhs = witt_mul(p, embed(r), embed(s));
        if (lhs != embed(t)) throw PresentationUnverified("algebra sample product mismatch");
    }

    std::vector<DeltaPoly> rels;
    for (int i = 1; i <= m; ++i)
        for (int j = i; j <= m; ++j) {
            DeltaPoly rel = DeltaPoly::variable(vars, i - 1, 0) * DeltaPoly::variable(vars, j - 1, 0) -
                            DeltaPoly::variable(vars, j - 1, 0).scaled(Rat(int_pow(Int(p), (unsigned long)i)));
            rels.push_back(rel);
        }
    return SchemePresentation::make(vars, rels, "W_" + std::to_string(m));
}

} // namespace pjet

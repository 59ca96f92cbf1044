#include "pjet/dseries.hpp"

#include <functional>

namespace pjet {

DSeries make_dseries(long long p, int r, int q_low, int q_high, int jet_cap) {
    auto vars = JetVarSet::make({"q"}, r, p);
    return DSeries{vars, DeltaPoly(vars), DSeriesMeta{p, r, q_low, q_high, jet_cap, false}};
}

int q_var_index(const DSeries& s) { return s.vars->index(0, 0); }

namespace {

Int binomial_int(long long n, int k) {
    // generalized binomial C(n, k), integer for all integers n
    Int num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= Int(n - i);
        den *= (i + 1);
    }
    return num / den;
}

TruncLimits window_limits(const DSeries& s) {
    TruncLimits lim;
    lim.capped_var = s.vars->index(0, 0);
    lim.var_cap = s.meta.q_high;
    lim.jet_cap = s.meta.jet_cap;
    return lim;
}

void drop_below_qlow(DSeries& s) {
    DeltaPoly kept(s.vars);
    int qv = s.vars->index(0, 0);
    for (const auto& [m, c] : s.s.terms())
        if (m[qv] >= s.meta.q_low) kept.add_term(m, c);
    s.s = kept;
}

} // namespace

DSeries delta_on_series(const DSeries& s) {
    const long long p = s.meta.p;
    const auto& vars = s.vars;
    const int qv = vars->index(0, 0);
    if (s.s.max_order_used() >= vars->max_order())
        throw OrderOverflow("series already uses the top jet order");

    TruncLimits lim = window_limits(s);

    // phi(s): q^n -> q^{pn} (1 + p q' q^{-p})^n, jets by the standard map
    DeltaPoly phis(vars);
    for (const auto& [mono, coeff] : s.s.terms()) {
        int n = mono[qv];
        // jet part of the monomial
        DeltaPoly jet_img = DeltaPoly::constant(vars, coeff);
        for (int v = 0; v < vars->nvars(); ++v) {
            if (v == qv || mono[v] == 0) continue;
            int j = vars->order_of(v);
            DeltaPoly img = DeltaPoly::variable(vars, 0, j, (int)p) +
                            DeltaPoly::variable(vars, 0, j + 1).scaled(Rat(p));
            jet_img = jet_img.mul(img.pow((unsigned long)mono[v], lim), lim);
        }
        // q-part
        if (n == 0) {
            phis += jet_img;
            continue;
        }
        int kmax = n > 0 ? (int)std::min<long long>(n, s.meta.jet_cap) : s.meta.jet_cap;
        for (int k = 0; k <= kmax; ++k) {
            // C(n,k) p^k q'^k q^{p(n-k)}
            Rat c = Rat(binomial_int(n, k) * int_pow(Int(p), (unsigned long)k));
            if (c == 0) continue;
            Mono m(vars->nvars(), 0);
            m[qv] = (int32_t)(p * (long long)(n - k));
            m[vars->index(0, 1)] = k;
            DeltaPoly term = DeltaPoly::monomial(vars, m, c);
            phis += term.mul(jet_img, lim);
        }
    }

    DeltaPoly sp = s.s.pow((unsigned long)p, lim);
    DSeries out = s;
    out.s = (phis - sp).div_p(true).truncated(lim);
    drop_below_qlow(out);
    return out;
}

DSeries f1_series(long long p, int nmax) {
    DSeries out = make_dseries(p, 1, -(int)p * nmax, 0, nmax);
    const int qv = out.vars->index(0, 0);
    for (int n = 1; n <= nmax; ++n) {
        Mono m(out.vars->nvars(), 0);
        m[qv] = (int32_t)(-p * (long long)n);
        m[out.vars->index(0, 1)] = n;
        out.s.add_term(m, gm_character_coefficient(p, n));
    }
    return out;
}

DSeries u_operator(const DSeries& s) {
    const int qv = s.vars->index(0, 0);
    for (const auto& [m, c] : s.s.terms())
        for (int v = 0; v < s.vars->nvars(); ++v)
            if (v != qv && m[v] != 0)
                throw DomainError("U-operator acts on the q-part only");
    DSeries out = s;
    out.s = DeltaPoly(s.vars);
    for (const auto& [m, c] : s.s.terms()) {
        if (m[qv] % s.meta.p != 0) continue;
        Mono t = m;
        t[qv] = (int32_t)(m[qv] / s.meta.p);
        out.s.add_term(t, c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// f-sharp
// ---------------------------------------------------------------------------

namespace {

DeltaPoly reduce_mod_p(const DeltaPoly& f) {
    return lift_gfp(to_gfp(f), f.vars());
}

} // namespace

FsharpReport fsharp_expansion(const EllipticCurveData& E, const NewformData& nf, int q_degree) {
    const long long p = E.p();
    if (!E.ordinary()) throw NotOrdinary("f-sharp needs an ordinary prime");
    if (nf.level % p == 0) throw BadReduction("p divides the level");
    if (nf.K() < q_degree) throw CapExceeded("newform coefficients short of the q-degree");

    FsharpReport rep;
    rep.q_degree = q_degree;

    // (a) the closed formula mod p
    DSeries formula = make_dseries(p, 2, 0, q_degree, (int)p + 1);
    {
        const auto& vars = formula.vars;
        const int qv = vars->index(0, 0);
        const int q1 = vars->index(0, 1);
        for (long long n = 1; n <= q_degree; ++n) {
            if (n % p == 0) continue;
            long long an = ((nf.a[n] % p) + p) % p;
            long long c = an * gfp_inv(n % p, p) % p;
            if (!c) continue;
            Mono m(vars->nvars(), 0);
            m[qv] = (int32_t)n;
            formula.s.add_term(m, Rat(c));
        }
        long long ap = ((E.ap % p) + p) % p;
        for (long long mm = 1; mm * p - p <= q_degree; ++mm) {
            if (mm > nf.K()) break;
            long long c = (p - ap) % p * (((nf.a[mm] % p) + p) % p) % p;
            if (!c) continue;
            Mono mo(vars->nvars(), 0);
            mo[qv] = (int32_t)(mm * p - p);
            mo[q1] = 1;
            formula.s.add_term(mo, Rat(c));
        }
        for (long long mm = 1; mm * p * p - p * p <= q_degree; ++mm) {
            if (mm > nf.K()) break;
            long long c = ((nf.a[mm] % p) + p) % p;
            if (!c) continue;
            Mono mo(vars->nvars(), 0);
            mo[qv] = (int32_t)(mm * p * p - p * p);
            mo[q1] = (int32_t)p;
            formula.s.add_term(mo, Rat(c));
        }
        formula.meta.mod_p = true;
    }

    // (b) the construction: z = sum a_n/n q^n, t = exp_F(z), psi at the jets
    UniSeries z(q_degree);
    for (int n = 1; n <= q_degree; ++n) z.c[n] = Rat(nf.a[n]) / n;
    UniSeries exp = elliptic_log(E.a4, E.a6, q_degree).comp_inverse();
    UniSeries t = exp.compose(z);
    for (int k = 0; k <= t.cap; ++k)
        if (!is_p_integral(t.c[k], Int(p)))
            throw NonIntegralParametrization("t(q) coefficient at q^" + std::to_string(k));

    DSeries tq = make_dseries(p, 2, 0, q_degree, (int)p + 1);
    {
        const int qv = tq.vars->index(0, 0);
        for (int k = 1; k <= t.cap; ++k) {
            if (t.c[k] == 0) continue;
            Mono m(tq.vars->nvars(), 0);
            m[qv] = k;
            tq.s.add_term(m, t.c[k]);
        }
    }
    // the output is mod p after two divisions by p, so integer coefficient
    // representatives mod p^4 are exact; they keep the arithmetic small
    tq.s = tq.s.coeffs_mod_ppow(4);
    DSeries dt = delta_on_series(tq);
    dt.s = dt.s.coeffs_mod_ppow(3);
    DSeries d2t = delta_on_series(dt);
    d2t.s = d2t.s.coeffs_mod_ppow(2);

    auto psi = elliptic_delta_character(E, (long long)p * p + q_degree);
    TruncLimits lim;
    lim.capped_var = tq.vars->index(0, 0);
    lim.var_cap = q_degree;
    lim.jet_cap = (int)p + 1;
    std::vector<const DeltaPoly*> images(psi.vars->nvars(), nullptr);
    // psi vars {"T"} order 2 -> substitute series; transport first
    std::vector<int> pmap(psi.vars->nvars());
    for (int k = 0; k <= 2; ++k) pmap[psi.vars->index(0, k)] = tq.vars->index(0, k);
    DeltaPoly psi_t = psi.psi.transport(tq.vars, pmap).coeffs_mod_ppow(2);
    std::vector<const DeltaPoly*> img(tq.vars->nvars(), nullptr);
    img[tq.vars->index(0, 0)] = &tq.s;
    img[tq.vars->index(0, 1)] = &dt.s;
    img[tq.vars->index(0, 2)] = &d2t.s;
    DeltaPoly composed = psi_t.substitute(img, lim);

    DSeries constructed = make_dseries(p, 2, 0, q_degree, (int)p + 1);
    constructed.s = reduce_mod_p(composed);
    constructed.meta.mod_p = true;

    DSeries difference = constructed;
    difference.s = reduce_mod_p(formula.s - constructed.s);

    rep.formula = formula;
    rep.constructed = constructed;
    rep.difference = difference;
    rep.congruent = difference.s.is_zero();
    return rep;
}

// ---------------------------------------------------------------------------
// "pT_m(p)" mod p
// ---------------------------------------------------------------------------

namespace {

// delta^k of the elementary symmetric polynomials of x_1..x_p, reduced mod p
std::vector<std::vector<GFpPoly>> symmetric_images(const VarsPtr& xvars, int r) {
    const long long p = xvars->p();
    const int np = xvars->nbase();
    std::vector<std::vector<GFpPoly>> images(np); // [j-1][k]
    for (int j = 1; j <= np; ++j) {
        // e_j = sum over j-subsets
        DeltaPoly ej(xvars);
        std::vector<int> idx(j);
        std::function<void(int, int)> rec = [&](int start, int depth) {
            if (depth == j) {
                DeltaPoly term = DeltaPoly::constant(xvars, 1);
                for (int d = 0; d < j; ++d)
                    term = term * DeltaPoly::variable(xvars, idx[d], 0);
                ej += term;
                return;
            }
            for (int v = start; v < np; ++v) {
                idx[depth] = v;
                rec(v + 1, depth + 1);
            }
        };
        rec(0, 0);
        DeltaPoly cur = ej;
        images[j - 1].push_back(to_gfp(cur));
        for (int k = 1; k <= r; ++k) {
            cur = delta(cur);
            images[j - 1].push_back(to_gfp(cur));
        }
    }
    return images;
}

Int mono_weight(const VarsPtr& vars, const Mono& m) {
    Int w = 0;
    for (int v = 0; v < (int)m.size(); ++v)
        if (m[v]) w += Int(m[v]) * vars->weight(v);
    return w;
}

} // namespace

DSeries hecke_classical_Tl(const DSeries& f, long long ell, int weight) {
    if (!is_prime_u64((unsigned long long)ell) || ell == f.meta.p)
        throw DomainError("T_ell needs a prime ell different from p");
    const int qv = f.vars->index(0, 0);
    for (const auto& [m, c] : f.s.terms())
        for (int v = 0; v < f.vars->nvars(); ++v)
            if (v != qv && m[v] != 0)
                throw DomainError("classical T_ell acts on the q-part only");
    DSeries out = f;
    out.s = DeltaPoly(f.vars);
    out.meta.q_high = f.meta.q_high / (int)ell; // the U_ell part shrinks the window
    Rat lw = Rat(int_pow(Int(ell), (unsigned long)(weight > 0 ? weight - 1 : 0)));
    for (const auto& [m, c] : f.s.terms()) {
        long long n = m[qv];
        if (n % ell == 0 && n / ell <= out.meta.q_high) {
            Mono t = m;
            t[qv] = (int32_t)(n / ell);
            out.s.add_term(t, c); // c_{ell n'} collected at q^{n'}
        }
        if (n * ell <= out.meta.q_high) {
            Mono t = m;
            t[qv] = (int32_t)(n * ell);
            out.s.add_term(t, c * lw);
        }
    }
    if (f.meta.mod_p) out.s = reduce_mod_p(out.s);
    return out;
}

SymmetricSolve delta_p_symmetric_solve(const DSeries& f, const HeckeOptions& opt) {
    const long long p = f.meta.p;
    const int r = f.meta.r;
    const int qv0 = f.vars->index(0, 0);
    for (const auto& [m, c] : f.s.terms())
        if (m[qv0] < 0) throw DomainError("delta-p-symmetry needs a power series in q");

    // x-variables and s-variables
    std::vector<std::string> xnames, snames;
    for (int i = 1; i <= (int)p; ++i) xnames.push_back("x" + std::to_string(i));
    for (int i = 1; i <= (int)p; ++i) snames.push_back("s" + std::to_string(i));
    auto xvars = JetVarSet::make(xnames, r, p);
    auto svars = JetVarSet::make(snames, r, p);

    // F = sum_i f(x_i, x_i', ..., x_i^{(r)}) mod p
    GFpPoly F(p, xvars->nvars());
    GFpPoly fmodp = to_gfp(f.s);
    for (int i = 0; i < (int)p; ++i) {
        for (const auto& [m, c] : fmodp.terms()) {
            Mono t(xvars->nvars(), 0);
            for (int k = 0; k <= r; ++k) t[xvars->index(i, k)] = m[f.vars->index(0, k)];
            F.add_term(t, c);
        }
    }

    auto images = symmetric_images(xvars, r);

    // split F into weighted-homogeneous pieces (weight of x^{(k)} is p^k;
    // the image of s_j^{(k)} is homogeneous of weight j p^k)
    std::map<Int, GFpPoly> pieces;
    for (const auto& [m, c] : F.terms()) {
        Int w = mono_weight(xvars, m);
        auto it = pieces.find(w);
        if (it == pieces.end())
            it = pieces.emplace(w, GFpPoly(p, xvars->nvars())).first;
        it->second.add_term(m, c);
    }

    SymmetricSolve out;
    out.s_vars = svars;
    out.f_p = GFpPoly(p, svars->nvars());

    for (const auto& [w, Fw] : pieces) {
        // candidate s-monomials: sum m_{j,k} * j * p^k = w, total degree cap
        std::vector<Mono> cands;
        Mono cur(svars->nvars(), 0);
        std::function<void(int, Int, int)> rec = [&](int v, Int left, int degleft) {
            if (left == 0) {
                cands.push_back(cur);
                return;
            }
            if (v >= svars->nvars() || degleft == 0) return;
            rec(v + 1, left, degleft);
            int j = svars->base_of(v) + 1;
            int k = svars->order_of(v);
            Int unit = Int(j) * int_pow(Int(p), (unsigned long)k);
            if (unit <= left) {
                cur[v] += 1;
                rec(v, left - unit, degleft - 1);
                cur[v] -= 1;
            }
        };
        rec(0, w, opt.s_degree_cap);
        if (cands.empty()) return out; // no candidates: not symmetric at this cap

        // image of each candidate monomial
        std::vector<GFpPoly> cand_img;
        for (const auto& cm : cands) {
            GFpPoly img(p, xvars->nvars());
            img.add_term(Mono(xvars->nvars(), 0), 1);
            for (int v = 0; v < svars->nvars(); ++v) {
                for (int e = 0; e < cm[v]; ++e)
                    img = img * images[svars->base_of(v)][svars->order_of(v)];
            }
            cand_img.push_back(img);
        }

        // linear solve: Fw = sum_c lambda_c cand_img[c]
        std::map<Mono, int, GrevlexLess> row_of;
        for (const auto& g : cand_img)
            for (const auto& [m, c] : g.terms()) row_of.emplace(m, 0);
        for (const auto& [m, c] : Fw.terms()) row_of.emplace(m, 0);
        int nr = 0;
        for (auto& [m, idx] : row_of) idx = nr++;
        const int nc = (int)cands.size();
        std::vector<std::vector<long long>> A(nr, std::vector<long long>(nc + 1, 0));
        for (int c = 0; c < nc; ++c)
            for (const auto& [m, v] : cand_img[c].terms()) A[row_of[m]][c] = v;
        for (const auto& [m, v] : Fw.terms()) A[row_of[m]][nc] = v;

        int rank = 0;
        std::vector<int> pivot_col;
        for (int c = 0; c < nc && rank < nr; ++c) {
            int piv = -1;
            for (int rr = rank; rr < nr; ++rr)
                if (A[rr][c] % p != 0) { piv = rr; break; }
            if (piv < 0) continue;
            std::swap(A[rank], A[piv]);
            long long inv = gfp_inv(A[rank][c], p);
            for (auto& x : A[rank]) x = x * inv % p;
            for (int rr = 0; rr < nr; ++rr) {
                if (rr == rank || A[rr][c] % p == 0) continue;
                long long fmul = A[rr][c] % p;
                for (int cc = 0; cc <= nc; ++cc)
                    A[rr][cc] = ((A[rr][cc] - fmul * A[rank][cc]) % p + p) % p;
            }
            pivot_col.push_back(c);
            ++rank;
        }
        for (int rr = rank; rr < nr; ++rr)
            if (A[rr][nc] % p != 0) return out; // inconsistent: not symmetric

        for (int rr = 0; rr < rank; ++rr) {
            long long v = ((A[rr][nc] % p) + p) % p;
            if (v) out.f_p.add_term(cands[pivot_col[rr]], v);
        }
    }
    out.symmetric = true;
    return out;
}

DSeries hecke_pTm(const DSeries& f, int m, const HeckeOptions& opt) {
    const long long p = f.meta.p;
    const int r = f.meta.r;
    auto solve = delta_p_symmetric_solve(f, opt);
    if (!solve.symmetric)
        throw NotDeltaPSymmetric("no f_(p) exists at degree cap " +
                                 std::to_string(opt.s_degree_cap));

    DSeries out = f;
    out.s = DeltaPoly(f.vars);
    out.meta.mod_p = true;
    out.meta.q_high = f.meta.q_high * (int)p;

    // f_(p)(0,...,0,q, 0,...,0,q', ...): s_j^{(k)} -> q^{(k)} iff j = p
    const auto& svars = solve.s_vars;
    for (const auto& [mono, c] : solve.f_p.terms()) {
        bool kill = false;
        Mono img(f.vars->nvars(), 0);
        for (int v = 0; v < svars->nvars(); ++v) {
            if (mono[v] == 0) continue;
            if (svars->base_of(v) + 1 != (int)p) { kill = true; break; }
            img[f.vars->index(0, svars->order_of(v))] += mono[v];
        }
        if (!kill) out.s.add_term(img, Rat(c));
    }

    // + p^m f(q^p, delta(q^p), ..., delta^r(q^p)) mod p: only m = 0 survives
    if (m == 0) {
        // delta^k(q^p) in characteristic zero, reduced mod p
        std::vector<DeltaPoly> dqp;
        {
            DeltaPoly cur = DeltaPoly::variable(f.vars, 0, 0, (int)p);
            dqp.push_back(reduce_mod_p(cur));
            DeltaPoly exact = cur;
            for (int k = 1; k <= r; ++k) {
                exact = delta(exact);
                dqp.push_back(reduce_mod_p(exact));
            }
        }
        GFpPoly fmodp = to_gfp(f.s);
        for (const auto& [mono, c] : fmodp.terms()) {
            DeltaPoly term = DeltaPoly::constant(f.vars, Rat(c));
            for (int k = 0; k <= r; ++k) {
                int e = mono[f.vars->index(0, k)];
                for (int i = 0; i < e; ++i) term = term * dqp[k];
            }
            out.s += term;
        }
        out.s = reduce_mod_p(out.s);
    }
    return out;
}

} // namespace pjet

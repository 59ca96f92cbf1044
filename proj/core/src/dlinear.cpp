#include "pjet/dlinear.hpp"

#include <algorithm>

namespace pjet {

// ---------------------------------------------------------------------------
// DeltaMatrix
// ---------------------------------------------------------------------------

DeltaMatrix::DeltaMatrix(CtxPtr ctx, int n) : ctx_(std::move(ctx)), n_(n) {
    if (n < 1) throw DomainError("matrix dimension must be >= 1");
    e_.assign((size_t)n * n, PadicElem::zero(ctx_));
}

DeltaMatrix DeltaMatrix::identity(const CtxPtr& ctx, int n) {
    DeltaMatrix m(ctx, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = PadicElem::one(ctx);
    return m;
}

int DeltaMatrix::prec() const {
    int p = ctx_->precision();
    for (const auto& x : e_) p = std::min(p, x.prec());
    return p;
}

DeltaMatrix DeltaMatrix::with_prec(int prec) const {
    DeltaMatrix r = *this;
    for (auto& x : r.e_) x = x.with_prec(prec);
    return r;
}

void require_same_shape(const DeltaMatrix& a, const DeltaMatrix& b) {
    if (a.n() != b.n()) throw ContextMismatch("matrix dimensions differ");
    if (!a.ctx()->same(*b.ctx())) throw ContextMismatch("matrix contexts differ");
}

DeltaMatrix DeltaMatrix::operator+(const DeltaMatrix& o) const {
    require_same_shape(*this, o);
    DeltaMatrix r = *this;
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

DeltaMatrix DeltaMatrix::operator-(const DeltaMatrix& o) const {
    require_same_shape(*this, o);
    DeltaMatrix r = *this;
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

DeltaMatrix DeltaMatrix::operator*(const DeltaMatrix& o) const {
    require_same_shape(*this, o);
    DeltaMatrix r(ctx_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            PadicElem acc = PadicElem::zero(ctx_);
            for (int k = 0; k < n_; ++k) acc = acc + at(i, k) * o.at(k, j);
            r.at(i, j) = acc;
        }
    return r;
}

DeltaMatrix DeltaMatrix::scaled(const PadicElem& c) const {
    DeltaMatrix r = *this;
    for (auto& x : r.e_) x = x * c;
    return r;
}

DeltaMatrix DeltaMatrix::scaled_int(const Int& c) const {
    return scaled(PadicElem(ctx_, c));
}

DeltaMatrix DeltaMatrix::inverse() const {
    // Gauss-Jordan with unit pivots
    int pr = prec();
    DeltaMatrix a = with_prec(pr);
    DeltaMatrix inv = identity(ctx_, n_).with_prec(pr);
    for (int col = 0; col < n_; ++col) {
        int piv = -1;
        for (int r = col; r < n_; ++r)
            if (a.at(r, col).is_unit()) { piv = r; break; }
        if (piv < 0) throw NotInvertible("no unit pivot in column " + std::to_string(col));
        for (int j = 0; j < n_; ++j) {
            std::swap(a.e_[(size_t)piv * n_ + j], a.e_[(size_t)col * n_ + j]);
            std::swap(inv.e_[(size_t)piv * n_ + j], inv.e_[(size_t)col * n_ + j]);
        }
        PadicElem d = a.at(col, col).inverse();
        for (int j = 0; j < n_; ++j) {
            a.at(col, j) = a.at(col, j) * d;
            inv.at(col, j) = inv.at(col, j) * d;
        }
        for (int r = 0; r < n_; ++r) {
            if (r == col || a.at(r, col).is_zero()) continue;
            PadicElem f = a.at(r, col);
            for (int j = 0; j < n_; ++j) {
                a.at(r, j) = a.at(r, j) - f * a.at(col, j);
                inv.at(r, j) = inv.at(r, j) - f * inv.at(col, j);
            }
        }
    }
    return inv;
}

bool DeltaMatrix::invertible_mod_p() const {
    try {
        (void)with_prec(1).inverse();
        return true;
    } catch (const NotInvertible&) {
        return false;
    }
}

DeltaMatrix DeltaMatrix::entrywise_frobenius() const {
    DeltaMatrix r = *this;
    for (auto& x : r.e_) x = frobenius(x);
    return r;
}

DeltaMatrix DeltaMatrix::entrywise_delta() const {
    DeltaMatrix r = *this;
    for (auto& x : r.e_) x = fermat_quotient(x);
    return r;
}

DeltaMatrix DeltaMatrix::entrywise_pow_p() const {
    DeltaMatrix r = *this;
    for (auto& x : r.e_) x = x.pow(ctx_->p());
    return r;
}

bool DeltaMatrix::eq_mod(const DeltaMatrix& o, int digits) const {
    require_same_shape(*this, o);
    for (size_t i = 0; i < e_.size(); ++i)
        if (!e_[i].eq_mod(o.e_[i], digits)) return false;
    return true;
}

bool DeltaMatrix::is_zero_mod(int digits) const {
    for (const auto& x : e_)
        if (!x.eq_mod(PadicElem::zero(ctx_).with_prec(x.prec()), std::min(digits, x.prec())))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// delta-Lie calculus
// ---------------------------------------------------------------------------

DeltaMatrix plus_delta(const DeltaMatrix& a, const DeltaMatrix& b) {
    require_same_shape(a, b);
    return a + b + (a * b).scaled_int(Int(a.ctx()->p()));
}

DeltaMatrix plus_delta_inverse(const DeltaMatrix& a) {
    // b = -a (1 + p a)^{-1}
    auto one = DeltaMatrix::identity(a.ctx(), a.n());
    DeltaMatrix den = one + a.scaled_int(Int(a.ctx()->p()));
    return (a * den.inverse()).scaled_int(Int(-1));
}

DeltaMatrix star_delta(const DeltaMatrix& a, const DeltaMatrix& b) {
    require_same_shape(a, b);
    DeltaMatrix fa = a.entrywise_frobenius();
    return fa * b * fa.inverse();
}

// ---------------------------------------------------------------------------
// flows
// ---------------------------------------------------------------------------

VarsPtr gl_vars(long long p, int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            names.push_back("x" + std::to_string(i) + std::to_string(j));
    return JetVarSet::make(names, 0, p);
}

DeltaFlow canonical_flow(long long p, int n) {
    return DeltaFlow{n, gl_vars(p, n), {}, 0};
}

DeltaPoly det_poly(const VarsPtr& vars, int n) {
    // Leibniz expansion; n <= 4 in practice
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    DeltaPoly det(vars);
    do {
        int sign = 1;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) sign = -sign;
        DeltaPoly term = DeltaPoly::constant(vars, sign);
        for (int i = 0; i < n; ++i)
            term = term * DeltaPoly::variable(vars, i * n + perm[i], 0);
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

DeltaMatrix eval_flow(const DeltaFlow& flow, const DeltaMatrix& a) {
    DeltaMatrix out(a.ctx(), a.n());
    if (flow.canonical()) return out;
    if (flow.n != a.n()) throw ContextMismatch("flow dimension mismatch");
    std::vector<PadicElem> vals;
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) vals.push_back(a.at(i, j));
    PadicElem scale = PadicElem::one(a.ctx());
    if (flow.det_pow > 0) {
        PadicElem det = det_poly(flow.vars, flow.n).eval(vals);
        if (!det.is_unit()) throw NotInvertible("flow needs invertible argument");
        scale = det.inverse().pow(flow.det_pow);
    }
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j)
            out.at(i, j) = flow.entries[(size_t)i * a.n() + j].eval(vals) * scale;
    return out;
}

DeltaMatrix ldelta(const DeltaMatrix& a, const DeltaFlow& flow) {
    if (a.prec() < 2) throw InsufficientPrecision("ldelta needs precision >= 2");
    DeltaMatrix D = eval_flow(flow, a);
    DeltaMatrix num = a.entrywise_delta() - D.with_prec(a.prec() - 1);
    DeltaMatrix den = a.entrywise_pow_p() + D.scaled_int(Int(a.ctx()->p()));
    return num * den.inverse().with_prec(num.prec());
}

// ---------------------------------------------------------------------------
// delta-linear solver
// ---------------------------------------------------------------------------

DeltaMatrix solve_delta_linear(const DeltaMatrix& alpha, const DeltaMatrix& u0) {
    require_same_shape(alpha, u0);
    if (!u0.invertible_mod_p()) throw NotInvertibleModP("u0 must be invertible mod p");
    const auto& ctx = alpha.ctx();
    DeltaMatrix eps = DeltaMatrix::identity(ctx, alpha.n()) + alpha.scaled_int(Int(ctx->p()));
    DeltaMatrix u = u0;
    // contraction: each step fixes one more digit
    for (int i = 0; i <= ctx->precision(); ++i) u = eps * u.entrywise_pow_p();
    return u;
}

DeltaMatrix delta_linear_residual(const DeltaMatrix& alpha, const DeltaMatrix& u) {
    return u.entrywise_delta() - (alpha * u.entrywise_pow_p()).with_prec(u.prec() - 1);
}

// ---------------------------------------------------------------------------
// delta-Galois enumeration
// ---------------------------------------------------------------------------

namespace {

// all residues of the subring O mod p^N (coefficient vectors)
std::vector<PadicElem> subring_residues(const CtxPtr& ctx, OSubring O, long long cap) {
    const long long p = ctx->p();
    const int N = ctx->precision();
    const int m = ctx->ext_degree();
    Int countI = int_pow(Int(p), (unsigned long)N);
    if (O == OSubring::TeichmullerGenerated && m > 1)
        countI = int_pow(countI, (unsigned long)m);
    if (countI > cap) throw SearchCapExceeded("subring has " + countI.str() + " residues");
    long long count = countI.convert_to<long long>();

    std::vector<PadicElem> out;
    out.reserve(count);
    if (O == OSubring::PrimeRing || m == 1) {
        for (long long v = 0; v < count; ++v) out.push_back(PadicElem(ctx, v));
    } else {
        // Teichmuller-generated subring of W(F_{p^m}) at precision N is the
        // whole slice: enumerate all coefficient vectors
        Int pN = int_pow(Int(p), (unsigned long)N);
        std::vector<Int> coeff(m, 0);
        for (long long v = 0; v < count; ++v) {
            Int x = v;
            for (int i = 0; i < m; ++i) {
                coeff[i] = x % pN;
                x /= pN;
            }
            out.push_back(PadicElem::from_coeffs(ctx, coeff, N));
        }
    }
    return out;
}

// delta of a product expressed through known deltas (paper axioms)
PadicElem delta_of_product(const PadicElem& x, const PadicElem& dx, const PadicElem& y,
                           const PadicElem& dy) {
    long long p = x.ctx()->p();
    return x.pow(p) * dy + y.pow(p) * dx + (dx * dy) * PadicElem(x.ctx(), p);
}

PadicElem cp_numeric(const PadicElem& a, const PadicElem& b) {
    long long p = a.ctx()->p();
    return (a.pow(p) + b.pow(p) - (a + b).pow(p)).div_exact_p();
}

} // namespace

std::vector<DeltaMatrix> delta_galois_group(const DeltaMatrix& u, OSubring O,
                                            const GaloisOptions& opt) {
    const auto& ctx = u.ctx();
    const int n = u.n();
    if (!u.invertible_mod_p()) throw NotInvertibleModP("u must be invertible");

    // alpha = delta(u) (u^{(p)})^{-1}; the equation data for O[u]
    DeltaMatrix alpha = u.entrywise_delta() * u.entrywise_pow_p().inverse().with_prec(u.prec() - 1);

    auto residues = subring_residues(ctx, O, opt.search_cap);
    // candidate count: |O|^{n^2}
    {
        Int total = 1;
        for (int i = 0; i < n * n; ++i) total *= (long long)residues.size();
        if (total > opt.search_cap)
            throw SearchCapExceeded("candidate count " + total.str());
    }

    auto in_O = [&](const PadicElem& x) {
        if (O == OSubring::TeichmullerGenerated || ctx->ext_degree() == 1) return true;
        for (int i = 1; i < ctx->ext_degree(); ++i)
            if (x.coeffs()[i] != 0) return false;
        return true;
    };

    // relation preservation: entries of u inside O are fixed by sigma, so
    // (uc)_{ij} = u_{ij} for those entries
    std::vector<bool> fixed_entry((size_t)n * n, false);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) fixed_entry[(size_t)i * n + j] = in_O(u.at(i, j));

    // n = 1: minimal exponent with u^e in O.  sigma fixes O, so (uc)^e = u^e
    // forces c^e = 1; in particular u in O leaves only c = 1.
    long long relation_e = 0;
    if (n == 1) {
        PadicElem pw = PadicElem::one(ctx);
        for (int e = 1; e <= opt.relation_exponent_cap; ++e) {
            pw = pw * u.at(0, 0);
            if (in_O(pw)) { relation_e = e; break; }
        }
    }

    const int check_prec = u.prec() - 1;
    std::vector<DeltaMatrix> group;
    std::vector<int> idx(n * n, 0);
    const long long R = (long long)residues.size();
    while (true) {
        DeltaMatrix c(ctx, n);
        for (int k = 0; k < n * n; ++k) c.at(k / n, k % n) = residues[idx[k]];
        bool ok = c.invertible_mod_p();
        if (ok && relation_e > 0) {
            // u^e in O forces sigma(u^e) = u^e, so c^e = 1
            PadicElem ce = c.at(0, 0).pow(relation_e);
            ok = ce.eq_at_min_prec(PadicElem::one(ctx));
        }
        if (ok) {
            DeltaMatrix uc = u * c;
            for (int i = 0; i < n && ok; ++i)
                for (int j = 0; j < n && ok; ++j)
                    if (fixed_entry[(size_t)i * n + j] &&
                        !uc.at(i, j).eq_at_min_prec(u.at(i, j)))
                        ok = false;
        }
        if (ok) {
            // delta-compatibility on generators: sigma(delta u_ij) = delta(sigma u_ij)
            DeltaMatrix uc = u * c;
            DeltaMatrix lhs = alpha * uc.entrywise_pow_p(); // sigma(alpha u^{(p)})
            // rhs: delta((uc)_ij) from known delta(u), delta(c) via the axioms
            DeltaMatrix du = u.entrywise_delta();
            DeltaMatrix dc = c.entrywise_delta();
            for (int i = 0; i < n && ok; ++i) {
                for (int j = 0; j < n && ok; ++j) {
                    PadicElem sum = PadicElem::zero(ctx);
                    PadicElem dsum = PadicElem::zero(ctx).with_prec(check_prec);
                    for (int k = 0; k < n; ++k) {
                        PadicElem term = u.at(i, k) * c.at(k, j);
                        PadicElem dterm =
                            delta_of_product(u.at(i, k), du.at(i, k), c.at(k, j), dc.at(k, j));
                        if (k == 0) {
                            sum = term;
                            dsum = dterm;
                        } else {
                            dsum = dsum + dterm + cp_numeric(sum, term);
                            sum = sum + term;
                        }
                    }
                    if (!dsum.eq_mod(lhs.at(i, j), std::min(check_prec, dsum.prec()))) ok = false;
                }
            }
        }
        if (ok) group.push_back(c);

        int k = 0;
        while (k < n * n && ++idx[k] == R) idx[k++] = 0;
        if (k == n * n) break;
    }
    return group;
}

// ---------------------------------------------------------------------------
// quadratic maps and flow compatibility
// ---------------------------------------------------------------------------

QuadraticMapData canonical_quadratic_map(GroupTag tag, int n) {
    QuadraticMapData H{tag, n, {}};
    if (tag == GroupTag::GL) return H;
    H.q.assign((size_t)n * n, 0);
    auto set = [&](int i, int j, int v) { H.q[(size_t)i * n + j] = v; };
    if (tag == GroupTag::Sp) {
        if (n % 2 != 0) throw DomainError("Sp needs even n");
        int r = n / 2;
        for (int i = 0; i < r; ++i) {
            set(i, r + i, 1);
            set(r + i, i, -1);
        }
    } else if (tag == GroupTag::SOeven) {
        if (n % 2 != 0) throw DomainError("SO(2r) needs even n");
        int r = n / 2;
        for (int i = 0; i < r; ++i) {
            set(i, r + i, 1);
            set(r + i, i, 1);
        }
    } else {
        if (n % 2 != 1) throw DomainError("SO(2r+1) needs odd n");
        int r = (n - 1) / 2;
        set(0, 0, 1);
        for (int i = 0; i < r; ++i) {
            set(1 + i, 1 + r + i, 1);
            set(1 + r + i, 1 + i, 1);
        }
    }
    return H;
}

namespace {

// H(x) = x^t q x as a polynomial matrix
std::vector<DeltaPoly> quadratic_map_entries(const VarsPtr& vars, const QuadraticMapData& H) {
    const int n = H.n;
    std::vector<DeltaPoly> out((size_t)n * n, DeltaPoly::zero(vars));
    if (H.tag == GroupTag::GL) {
        for (int k = 0; k < n; ++k)
            out[(size_t)k * n + k] = DeltaPoly::constant(vars, 1);
        return out;
    }
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            DeltaPoly acc(vars);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    int qij = H.q[(size_t)i * n + j];
                    if (qij == 0) continue;
                    // (x^t q x)_{kl} = sum_{ij} x_{ik} q_{ij} x_{jl}
                    DeltaPoly term = DeltaPoly::variable(vars, i * n + k, 0) *
                                     DeltaPoly::variable(vars, j * n + l, 0);
                    acc += term.scaled(Rat(qij));
                }
            out[(size_t)k * n + l] = acc;
        }
    return out;
}

// substitute x_{ij} -> images into f
DeltaPoly subst_matrix(const DeltaPoly& f, const std::vector<DeltaPoly>& images) {
    std::vector<const DeltaPoly*> ptrs;
    ptrs.reserve(images.size());
    for (const auto& g : images) ptrs.push_back(&g);
    return f.substitute(ptrs);
}

} // namespace

FlowReport check_flow_compatibility(const DeltaFlow& flow, const QuadraticMapData& H,
                                    int k_max, const GBCaps& caps) {
    const int n = H.n;
    const auto& vars = flow.vars;
    const long long p = vars->p();
    FlowReport rep;

    DeltaPoly det = det_poly(vars, n);
    // Phi entries, denominators cleared by det^e: PhiNum_{ij} = x_{ij}^p det^e + p N_{ij}
    const int e = flow.det_pow;
    DeltaPoly dete = det.pow((unsigned long)e);
    std::vector<DeltaPoly> phi_num((size_t)n * n, DeltaPoly(vars));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            DeltaPoly t = DeltaPoly::variable(vars, i * n + j, 0, (int)p) * dete;
            if (!flow.canonical())
                t += flow.entries[(size_t)i * n + j].scaled(Rat(p));
            phi_num[(size_t)i * n + j] = t;
        }

    auto Hent = quadratic_map_entries(vars, H);

    // (a) horizontality: H_{kl}(Phi) - H_{kl}(x)^p = 0, denominators cleared:
    //     H_{kl}(PhiNum) - H_{kl}(x)^p det^{2pe}... H is quadratic, so
    //     H_{kl}(PhiNum) = det^{2e} H_{kl}(Phi); the comparison multiplies the
    //     right side by det^{2e} as well.
    rep.horizontal = true;
    rep.horizontal_mod_p2 = true;
    DeltaPoly det2e = dete * dete;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            DeltaPoly lhs = H.tag == GroupTag::GL
                                ? (k == l ? det2e : DeltaPoly::zero(vars))
                                : subst_matrix(Hent[(size_t)k * n + l], phi_num);
            DeltaPoly rhs = Hent[(size_t)k * n + l].pow((unsigned long)p) * det2e;
            DeltaPoly diff = lhs - rhs;
            if (!diff.is_zero()) {
                DeltaPoly witness = diff.div_p(false);
                rep.horizontal = false;
                if (!to_gfp(witness).is_zero()) rep.horizontal_mod_p2 = false;
                if (!rep.horizontality_witness) rep.horizontality_witness = witness;
            }
        }

    // (b) symmetry: Phi0(x)^t q Phi(x) = Phi(x)^t q Phi0(x) (dagger = transpose)
    if (H.tag == GroupTag::GL) {
        rep.symmetric = flow.canonical();
    } else {
        rep.symmetric = true;
        for (int k = 0; k < n && rep.symmetric; ++k)
            for (int l = 0; l < n && rep.symmetric; ++l) {
                DeltaPoly lhs(vars), rhs(vars);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        int qij = H.q[(size_t)i * n + j];
                        if (qij == 0) continue;
                        lhs += (DeltaPoly::variable(vars, i * n + k, 0, (int)p) *
                                phi_num[(size_t)j * n + l])
                                   .scaled(Rat(qij));
                        rhs += (phi_num[(size_t)i * n + k] *
                                DeltaPoly::variable(vars, j * n + l, 0, (int)p))
                                   .scaled(Rat(qij));
                    }
                if (!(lhs - rhs).is_zero()) rep.symmetric = false;
            }
    }

    // (c) ideal stability mod p^k: generators g_{kl} = H_{kl}(x) - q_{kl}.
    // With denominators cleared, det^{2e} g_{kl}(Phi) = H_{kl}(PhiNum) -
    // q_{kl} det^{2e}; det is invertible in the local ring, so membership of
    // the cleared form is equivalent.
    if (H.tag != GroupTag::GL) {
        std::vector<DeltaPoly> gens;
        std::vector<GFpPoly> gens_p;
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                DeltaPoly g = Hent[(size_t)k * n + l] -
                              DeltaPoly::constant(vars, Rat(H.q[(size_t)k * n + l]));
                gens.push_back(g);
                gens_p.push_back(to_gfp(g));
            }
        Groebner gb = Groebner::compute(gens_p, caps);
        for (int k = 1; k <= k_max; ++k) {
            bool stable = true;
            for (int gi0 = 0; gi0 < n * n && stable; ++gi0) {
                int kk = gi0 / n, ll = gi0 % n;
                DeltaPoly cur =
                    subst_matrix(Hent[(size_t)kk * n + ll], phi_num) -
                    det2e.scaled(Rat(H.q[(size_t)kk * n + ll]));
                // peel: cur in <gens> + p^j layer by layer
                for (int lev = 0; lev < k; ++lev) {
                    std::vector<GFpPoly> combo;
                    GFpPoly nf = gb.normal_form(to_gfp(cur), &combo);
                    if (!nf.is_zero()) {
                        stable = false;
                        break;
                    }
                    DeltaPoly sub(vars);
                    for (size_t gi = 0; gi < gens.size(); ++gi)
                        sub += lift_gfp(combo[gi], vars) * gens[gi];
                    cur = (cur - sub).div_p(true);
                }
            }
            rep.ideal_stable_mod_pk.push_back(stable);
        }
    }
    return rep;
}

std::optional<DeltaFlow> solve_flow_horizontal_mod_p(long long p, const QuadraticMapData& H,
                                                     int deg_bound, int det_pow) {
    const int n = H.n;
    auto vars = gl_vars(p, n);
    auto Hent = quadratic_map_entries(vars, H);
    DeltaPoly det = det_poly(vars, n);
    DeltaPoly dete = det.pow((unsigned long)det_pow);

    // want: H(x^{(p)} + p Delta) = H(x)^{(p)} mod p^2 with Delta = N/det^e,
    // i.e. (x^{(p)})^t q N + N^t q x^{(p)} = D det^e mod p,
    // where D = (H(x)^{(p)} - H(x^{(p)}))/p.
    std::vector<DeltaPoly> xp((size_t)n * n, DeltaPoly(vars));
    for (int i = 0; i < n * n; ++i) xp[i] = DeltaPoly::variable(vars, i, 0, (int)p);

    std::vector<GFpPoly> D;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            DeltaPoly HatXp = subst_matrix(Hent[(size_t)k * n + l], xp);
            DeltaPoly num = Hent[(size_t)k * n + l].pow((unsigned long)p) - HatXp;
            D.push_back(to_gfp((num.div_p(true)) * dete));
        }

    // unknowns: coefficients of N_{ij} over monomials of degree <= deg_bound
    std::vector<Mono> cand;
    {
        Mono m(vars->nvars(), 0);
        std::function<void(int, int)> rec = [&](int v, int left) {
            if (v == vars->nvars()) {
                cand.push_back(m);
                return;
            }
            for (int ee = 0; ee <= left; ++ee) {
                m[v] = ee;
                rec(v + 1, left - ee);
            }
            m[v] = 0;
        };
        rec(0, deg_bound);
    }
    const int nm = (int)cand.size();
    const int unknowns = n * n * nm;

    // rows: monomials appearing in the equations
    std::map<std::pair<int, Mono>, int> row_of; // (equation index, monomial)

    // build the linear system by symbolic expansion per unknown
    std::vector<std::map<int, long long>> cols(unknowns); // row -> coeff
    int next_row = 0;
    auto row_index = [&](int eq, const Mono& mono) {
        auto key = std::make_pair(eq, mono);
        auto it = row_of.find(key);
        if (it == row_of.end()) it = row_of.emplace(key, next_row++).first;
        return it->second;
    };

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int c = 0; c < nm; ++c) {
                int un = (i * n + j) * nm + c;
                DeltaPoly Nij = DeltaPoly::monomial(vars, cand[c], 1);
                // (x^{(p)})^t q N: entry (k,l) = sum_{a,b} x^p_{ak} q_{ab} N_{bl}
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        DeltaPoly acc(vars);
                        for (int a = 0; a < n; ++a) {
                            int qab = H.q[(size_t)a * n + i];
                            if (qab != 0 && j == l)
                                acc += (DeltaPoly::variable(vars, a * n + k, 0, (int)p) * Nij)
                                           .scaled(Rat(qab));
                            int qib = H.q[(size_t)i * n + a];
                            if (qib != 0 && j == k)
                                acc += (Nij * DeltaPoly::variable(vars, a * n + l, 0, (int)p))
                                           .scaled(Rat(qib));
                        }
                        if (acc.is_zero()) continue;
                        GFpPoly accp = to_gfp(acc);
                        for (const auto& [mm, cc] : accp.terms())
                            cols[un][row_index(k * n + l, mm)] =
                                (cols[un][row_index(k * n + l, mm)] + cc) % p;
                    }
            }

    // right-hand side
    std::map<int, long long> rhs;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            for (const auto& [mm, cc] : D[(size_t)k * n + l].terms())
                rhs[row_index(k * n + l, mm)] = cc;

    // dense Gaussian elimination mod p
    const int rows = next_row;
    std::vector<std::vector<long long>> A(rows, std::vector<long long>(unknowns + 1, 0));
    for (int u = 0; u < unknowns; ++u)
        for (const auto& [r, v] : cols[u]) A[r][u] = v;
    for (const auto& [r, v] : rhs) A[r][unknowns] = v;

    std::vector<int> pivot_col(rows, -1);
    int rank = 0;
    for (int c = 0; c < unknowns && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (A[r][c] % p != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(A[rank], A[piv]);
        long long inv = gfp_inv(A[rank][c], p);
        for (auto& x : A[rank]) x = x * inv % p;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || A[r][c] % p == 0) continue;
            long long f = A[r][c] % p;
            for (int cc = c; cc <= unknowns; ++cc)
                A[r][cc] = ((A[r][cc] - f * A[rank][cc]) % p + p) % p;
        }
        pivot_col[rank] = c;
        ++rank;
    }
    for (int r = rank; r < rows; ++r)
        if (A[r][unknowns] % p != 0) return std::nullopt;

    std::vector<long long> sol(unknowns, 0);
    for (int r = 0; r < rank; ++r) sol[pivot_col[r]] = A[r][unknowns] % p;

    DeltaFlow flow{n, vars, std::vector<DeltaPoly>((size_t)n * n, DeltaPoly(vars)), det_pow};
    for (int i = 0; i < n * n; ++i) {
        DeltaPoly Ni(vars);
        for (int c = 0; c < nm; ++c) {
            long long v = ((sol[(size_t)i * nm + c] % p) + p) % p;
            if (v) Ni.add_term(cand[c], Rat(v));
        }
        flow.entries[i] = Ni;
    }
    return flow;
}

} // namespace pjet

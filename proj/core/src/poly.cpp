#include "pjet/poly.hpp"

#include <algorithm>
#include <set>

namespace pjet {

// ---------------------------------------------------------------------------
// JetVarSet
// ---------------------------------------------------------------------------

VarsPtr JetVarSet::make(std::vector<std::string> base_vars, int max_order, long long p) {
    if (max_order < 0) throw DomainError("max_order must be >= 0");
    if (!is_prime_u64((unsigned long long)p)) throw DomainError("p must be prime");
    std::set<std::string> seen;
    for (const auto& v : base_vars) {
        if (v.empty() || v == "p") throw DomainError("invalid variable name '" + v + "'");
        if (!seen.insert(v).second) throw DomainError("duplicate variable name '" + v + "'");
    }
    auto vs = std::make_shared<JetVarSet>();
    vs->base_ = std::move(base_vars);
    vs->max_order_ = max_order;
    vs->p_ = p;
    return vs;
}

std::string JetVarSet::var_name(int idx) const {
    int j = order_of(idx);
    std::string n = base_[base_of(idx)];
    if (j <= 3) {
        for (int k = 0; k < j; ++k) n += '\'';
    } else {
        n += "^(" + std::to_string(j) + ")";
    }
    return n;
}

std::optional<int> JetVarSet::find_base(const std::string& name) const {
    for (int i = 0; i < nbase(); ++i)
        if (base_[i] == name) return i;
    return std::nullopt;
}

bool GrlexLess::operator()(const Mono& a, const Mono& b) const {
    long long da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// ---------------------------------------------------------------------------
// DeltaPoly basics
// ---------------------------------------------------------------------------

DeltaPoly DeltaPoly::constant(const VarsPtr& vars, const Rat& c) {
    DeltaPoly f(vars);
    if (c != 0) f.terms_[Mono(vars->nvars(), 0)] = c;
    return f;
}

DeltaPoly DeltaPoly::variable(const VarsPtr& vars, int base_i, int order, int exp) {
    if (order > vars->max_order()) throw OrderOverflow("variable order beyond varset");
    DeltaPoly f(vars);
    Mono m(vars->nvars(), 0);
    m[vars->index(base_i, order)] = exp;
    f.terms_[m] = 1;
    return f;
}

DeltaPoly DeltaPoly::monomial(const VarsPtr& vars, Mono m, const Rat& c) {
    DeltaPoly f(vars);
    if (c != 0) f.terms_[std::move(m)] = c;
    return f;
}

bool DeltaPoly::is_integral() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return rat_den(t.second) == 1; });
}

bool DeltaPoly::is_p_integral() const {
    Int p(vars_->p());
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const auto& t) { return pjet::is_p_integral(t.second, p); });
}

long DeltaPoly::min_coeff_valuation() const {
    if (terms_.empty()) return 0;
    Int p(vars_->p());
    long v = padic_valuation(terms_.begin()->second, p);
    for (const auto& [m, c] : terms_) v = std::min(v, padic_valuation(c, p));
    return v;
}

long long DeltaPoly::total_degree() const {
    long long d = 0;
    for (const auto& [m, c] : terms_) {
        long long t = 0;
        for (auto e : m) t += e;
        d = std::max(d, t);
    }
    return d;
}

Int DeltaPoly::weighted_degree() const {
    Int d = 0;
    for (const auto& [m, c] : terms_) {
        Int t = 0;
        for (int i = 0; i < (int)m.size(); ++i)
            if (m[i]) t += Int(m[i]) * vars_->weight(i);
        d = std::max(d, t);
    }
    return d;
}

int DeltaPoly::max_order_used() const {
    int mo = -1;
    for (const auto& [m, c] : terms_)
        for (int i = 0; i < (int)m.size(); ++i)
            if (m[i] != 0) mo = std::max(mo, vars_->order_of(i));
    return mo;
}

bool DeltaPoly::depends_on(int var_idx) const {
    return std::any_of(terms_.begin(), terms_.end(),
                       [&](const auto& t) { return t.first[var_idx] != 0; });
}

void DeltaPoly::add_term(const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

DeltaPoly DeltaPoly::operator-() const {
    DeltaPoly r(vars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

DeltaPoly DeltaPoly::operator+(const DeltaPoly& o) const {
    require_same_vars(*this, o);
    DeltaPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

DeltaPoly DeltaPoly::operator-(const DeltaPoly& o) const {
    require_same_vars(*this, o);
    DeltaPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

DeltaPoly& DeltaPoly::operator+=(const DeltaPoly& o) {
    require_same_vars(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

DeltaPoly& DeltaPoly::operator-=(const DeltaPoly& o) {
    require_same_vars(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

namespace {

bool keep_mono(const Mono& m, const JetVarSet& vars, const TruncLimits& lim) {
    if (lim.total_cap >= 0) {
        long long t = 0;
        for (auto e : m) t += e;
        if (t > lim.total_cap) return false;
    }
    if (lim.weighted_cap >= 0) {
        Int w = 0;
        for (int i = 0; i < (int)m.size(); ++i)
            if (m[i]) w += Int(m[i]) * vars.weight(i);
        if (w > lim.weighted_cap) return false;
    }
    if (lim.capped_var >= 0 && m[lim.capped_var] > lim.var_cap) return false;
    if (lim.jet_cap >= 0) {
        long long j = 0;
        for (int i = 0; i < (int)m.size(); ++i)
            if (m[i] && vars.order_of(i) >= 1) j += m[i];
        if (j > lim.jet_cap) return false;
    }
    return true;
}

} // namespace

DeltaPoly DeltaPoly::mul(const DeltaPoly& o, const TruncLimits& lim) const {
    require_same_vars(*this, o);
    DeltaPoly r(vars_);
    if (terms_.empty() || o.terms_.empty()) return r;
    Mono m(vars_->nvars());
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            for (int i = 0; i < (int)m.size(); ++i) m[i] = ma[i] + mb[i];
            if (!lim.unlimited() && !keep_mono(m, *vars_, lim)) continue;
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

DeltaPoly DeltaPoly::operator*(const DeltaPoly& o) const { return mul(o, {}); }

DeltaPoly DeltaPoly::scaled(const Rat& c) const {
    DeltaPoly r(vars_);
    if (c == 0) return r;
    for (const auto& [m, cc] : terms_) r.terms_.emplace(m, cc * c);
    return r;
}

DeltaPoly DeltaPoly::pow(unsigned long e, const TruncLimits& lim) const {
    DeltaPoly r = constant(vars_, 1);
    DeltaPoly base = *this;
    while (e) {
        if (e & 1) r = r.mul(base, lim);
        e >>= 1;
        if (e) base = base.mul(base, lim);
    }
    return r;
}

DeltaPoly DeltaPoly::div_p(bool exact_required) const {
    Int p(vars_->p());
    DeltaPoly r(vars_);
    for (const auto& [m, c] : terms_) {
        Rat q = c / Rat(p);
        if (exact_required && !pjet::is_p_integral(q, p))
            throw InexactDivision("division by p left a denominator");
        r.terms_.emplace(m, q);
    }
    return r;
}

DeltaPoly DeltaPoly::derivative(int var_idx) const {
    DeltaPoly r(vars_);
    for (const auto& [m, c] : terms_) {
        if (m[var_idx] == 0) continue;
        Mono d = m;
        d[var_idx] -= 1;
        r.add_term(d, c * m[var_idx]);
    }
    return r;
}

DeltaPoly DeltaPoly::coeffs_mod_ppow(int K) const {
    Int p(vars_->p());
    Int pK = int_pow(p, (unsigned long)K);
    DeltaPoly r(vars_);
    for (const auto& [m, c] : terms_) {
        Int num = rat_num(c) % pK, den = rat_den(c) % pK;
        if (den % p == 0) throw NonIntegralInput("coefficient has p in its denominator");
        if (num < 0) num += pK;
        // den^{-1} mod p^K by extended Euclid
        Int t = 0, nt = 1, rr = pK, nr = den;
        while (nr != 0) {
            Int q = rr / nr;
            Int tmp = t - q * nt; t = nt; nt = tmp;
            tmp = rr - q * nr; rr = nr; nr = tmp;
        }
        if (t < 0) t += pK;
        r.add_term(m, Rat(num * t % pK));
    }
    return r;
}

DeltaPoly DeltaPoly::truncated(const TruncLimits& lim) const {
    if (lim.unlimited()) return *this;
    DeltaPoly r(vars_);
    for (const auto& [m, c] : terms_)
        if (keep_mono(m, *vars_, lim)) r.terms_.emplace(m, c);
    return r;
}

DeltaPoly DeltaPoly::substitute(const std::vector<const DeltaPoly*>& images,
                                const TruncLimits& lim) const {
    DeltaPoly out(vars_);
    // power cache per substituted variable
    std::map<std::pair<int, int>, DeltaPoly> pow_cache;
    auto power_of = [&](int v, int e) -> const DeltaPoly& {
        auto key = std::make_pair(v, e);
        auto it = pow_cache.find(key);
        if (it != pow_cache.end()) return it->second;
        DeltaPoly val = images[v]->pow((unsigned long)e, lim);
        return pow_cache.emplace(key, std::move(val)).first->second;
    };
    for (const auto& [m, c] : terms_) {
        DeltaPoly term = constant(vars_, c);
        Mono residual(vars_->nvars(), 0);
        for (int v = 0; v < (int)m.size(); ++v) {
            if (m[v] == 0) continue;
            if (v < (int)images.size() && images[v] != nullptr) {
                if (m[v] < 0) throw DomainError("cannot substitute into negative power");
                term = term.mul(power_of(v, m[v]), lim);
            } else {
                residual[v] = m[v];
            }
        }
        if (std::any_of(residual.begin(), residual.end(), [](auto e) { return e != 0; }))
            term = term.mul(monomial(vars_, residual, 1), lim);
        out += term;
    }
    return out.truncated(lim);
}

DeltaPoly DeltaPoly::transport(const VarsPtr& to, const std::vector<int>& var_map) const {
    DeltaPoly r(to);
    for (const auto& [m, c] : terms_) {
        Mono t(to->nvars(), 0);
        for (int i = 0; i < (int)m.size(); ++i) {
            if (m[i] == 0) continue;
            if (var_map[i] < 0) throw DomainError("transport drops a used variable");
            t[var_map[i]] += m[i];
        }
        r.add_term(t, c);
    }
    return r;
}

PadicElem DeltaPoly::eval(const std::vector<PadicElem>& values) const {
    if ((int)values.size() != vars_->nvars())
        throw DomainError("evaluation needs one value per jet variable");
    CtxPtr ctx = values.empty() ? nullptr : values[0].ctx();
    PadicElem acc = PadicElem::zero(ctx);
    for (const auto& [m, c] : terms_) {
        PadicElem t = PadicElem::from_rational(ctx, c);
        for (int v = 0; v < (int)m.size(); ++v) {
            if (m[v] == 0) continue;
            t = t * values[v].pow(m[v]);
        }
        acc = acc + t;
    }
    return acc;
}

Rat DeltaPoly::eval_rat(const std::vector<Rat>& values) const {
    Rat acc = 0;
    for (const auto& [m, c] : terms_) {
        Rat t = c;
        for (int v = 0; v < (int)m.size(); ++v) {
            if (m[v] == 0) continue;
            if (m[v] < 0) {
                if (values[v] == 0) throw DomainError("division by zero in evaluation");
                Rat inv = Rat(1) / values[v];
                for (int k = 0; k < -m[v]; ++k) t *= inv;
            } else {
                for (int k = 0; k < m[v]; ++k) t *= values[v];
            }
        }
        acc += t;
    }
    return acc;
}

bool DeltaPoly::operator==(const DeltaPoly& o) const {
    return vars_->same(*o.vars_) && terms_ == o.terms_;
}

std::string DeltaPoly::to_string() const { return print_poly(*this); }

void require_same_vars(const DeltaPoly& a, const DeltaPoly& b) {
    if (!a.vars() || !b.vars() || !a.vars()->same(*b.vars()))
        throw ContextMismatch("polynomials over different jet variable sets");
}

// ---------------------------------------------------------------------------
// phi, delta, C_p, prolongation
// ---------------------------------------------------------------------------

DeltaPoly phi(const DeltaPoly& f, const TruncLimits& lim) {
    const auto& vars = f.vars();
    const long long p = vars->p();
    std::vector<std::unique_ptr<DeltaPoly>> storage;
    std::vector<const DeltaPoly*> images(vars->nvars(), nullptr);
    for (int v = 0; v < vars->nvars(); ++v) {
        if (!f.depends_on(v)) continue;
        int j = vars->order_of(v);
        if (j + 1 > vars->max_order())
            throw OrderOverflow("phi needs order headroom beyond " + vars->var_name(v));
        int b = vars->base_of(v);
        auto img = std::make_unique<DeltaPoly>(
            DeltaPoly::variable(vars, b, j, (int)p) +
            DeltaPoly::variable(vars, b, j + 1).scaled(Rat(p)));
        images[v] = img.get();
        storage.push_back(std::move(img));
    }
    return f.substitute(images, lim);
}

DeltaPoly delta(const DeltaPoly& f, const TruncLimits& lim) {
    if (!f.is_p_integral())
        throw NonIntegralInput("delta is defined on p-integral polynomials only");
    DeltaPoly num = phi(f, lim) - f.pow((unsigned long)f.vars()->p(), lim);
    return num.div_p(/*exact_required=*/true);
}

DeltaPoly c_p(const DeltaPoly& f, const DeltaPoly& g) {
    require_same_vars(f, g);
    unsigned long p = (unsigned long)f.vars()->p();
    DeltaPoly num = f.pow(p) + g.pow(p) - (f + g).pow(p);
    bool exact = f.is_p_integral() && g.is_p_integral();
    return num.div_p(exact);
}

DeltaPoly prolong_derivation(const std::vector<DeltaPoly>& xi_images,
                             const DeltaPoly& f, int n) {
    const auto& vars = f.vars();
    if ((int)xi_images.size() != vars->nbase())
        throw DomainError("prolongation needs one image per base variable");
    if (f.max_order_used() > n)
        throw OrderOverflow("f involves jet order beyond the requested prolongation");
    if (n > vars->max_order())
        throw OrderOverflow("prolongation order beyond the variable set");
    const long long p = vars->p();

    // images[idx(i,j)] = xi^(n)(x_i^(j)), built from the commutation with phi:
    //   xi(x^(j+1)) = phi(xi(x^(j)))/p - (x^(j))^{p-1} xi(x^(j))
    std::vector<DeltaPoly> img;
    img.reserve(vars->nvars());
    for (int i = 0; i < vars->nbase(); ++i) {
        for (int j = 0; j <= vars->max_order(); ++j) {
            if (j == 0) {
                img.push_back(xi_images[i]);
            } else if (j <= n) {
                const DeltaPoly& prev = img[vars->index(i, j - 1)];
                DeltaPoly t = phi(prev).div_p(false) -
                              DeltaPoly::variable(vars, i, j - 1, (int)p - 1) * prev;
                img.push_back(std::move(t));
            } else {
                img.push_back(DeltaPoly::zero(vars));
            }
        }
    }

    DeltaPoly out(vars);
    for (int v = 0; v < vars->nvars(); ++v) {
        if (vars->order_of(v) > n || !f.depends_on(v)) continue;
        out += f.derivative(v) * img[v];
    }
    return out;
}

// ---------------------------------------------------------------------------
// symmetry testing
// ---------------------------------------------------------------------------

SymmetryReport is_variational_symmetry(const std::vector<DeltaPoly>& xi_images,
                                       const std::vector<DeltaPoly>& generators,
                                       int n, bool variational, int monomial_cap) {
    SymmetryReport rep;
    rep.holds = true;
    if (generators.empty()) return rep;

    std::vector<DeltaPoly> prolonged;
    prolonged.reserve(generators.size());
    for (const auto& g : generators)
        prolonged.push_back(prolong_derivation(xi_images, g, n));

    if (variational) {
        for (const auto& im : prolonged) {
            if (!im.is_zero()) {
                rep.holds = false;
                rep.witness = im;
                return rep;
            }
        }
        return rep;
    }

    // membership of each image in the K-span of the generators:
    // exact Gaussian elimination over the rationals, monomials as rows
    std::map<Mono, int, GrlexLess> row_of;
    for (const auto& g : generators)
        for (const auto& [m, c] : g.terms())
            row_of.emplace(m, 0);
    for (const auto& im : prolonged)
        for (const auto& [m, c] : im.terms())
            row_of.emplace(m, 0);
    if ((int)row_of.size() > monomial_cap)
        throw DegreeBoundExceeded("symmetry membership needs " +
                                  std::to_string(row_of.size()) + " monomials");
    int idx = 0;
    for (auto& [m, r] : row_of) r = idx++;

    const int rows = idx, cols = (int)generators.size();
    for (const auto& im : prolonged) {
        // solve A c = b
        std::vector<std::vector<Rat>> A(rows, std::vector<Rat>(cols + 1, Rat(0)));
        for (int j = 0; j < cols; ++j)
            for (const auto& [m, c] : generators[j].terms())
                A[row_of[m]][j] = c;
        for (const auto& [m, c] : im.terms())
            A[row_of[m]][cols] = c;
        int r = 0;
        for (int c = 0; c < cols && r < rows; ++c) {
            int piv = -1;
            for (int i = r; i < rows; ++i)
                if (A[i][c] != 0) { piv = i; break; }
            if (piv < 0) continue;
            std::swap(A[r], A[piv]);
            for (int i = 0; i < rows; ++i) {
                if (i == r || A[i][c] == 0) continue;
                Rat f = A[i][c] / A[r][c];
                for (int k = c; k <= cols; ++k) A[i][k] -= f * A[r][k];
            }
            ++r;
        }
        bool consistent = true;
        for (int i = 0; i < rows; ++i) {
            bool all_zero = true;
            for (int c = 0; c < cols; ++c)
                if (A[i][c] != 0) { all_zero = false; break; }
            if (all_zero && A[i][cols] != 0) { consistent = false; break; }
        }
        if (!consistent) {
            rep.holds = false;
            rep.witness = im;
            return rep;
        }
    }
    return rep;
}

} // namespace pjet

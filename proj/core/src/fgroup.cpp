#include "pjet/fgroup.hpp"

namespace pjet {

// ---------------------------------------------------------------------------
// UniSeries
// ---------------------------------------------------------------------------

UniSeries UniSeries::identity(int cap) {
    UniSeries s(cap);
    if (cap >= 1) s.c[1] = 1;
    return s;
}

UniSeries UniSeries::operator+(const UniSeries& o) const {
    UniSeries r(std::min(cap, o.cap));
    for (int k = 0; k <= r.cap; ++k) r.c[k] = at(k) + o.at(k);
    return r;
}

UniSeries UniSeries::operator-(const UniSeries& o) const {
    UniSeries r(std::min(cap, o.cap));
    for (int k = 0; k <= r.cap; ++k) r.c[k] = at(k) - o.at(k);
    return r;
}

UniSeries UniSeries::operator*(const UniSeries& o) const {
    UniSeries r(std::min(cap, o.cap));
    for (int i = 0; i <= r.cap; ++i) {
        if (c[i] == 0) continue;
        for (int j = 0; i + j <= r.cap && j <= o.cap; ++j) {
            if (o.c[j] == 0) continue;
            r.c[i + j] += c[i] * o.c[j];
        }
    }
    return r;
}

UniSeries UniSeries::scaled(const Rat& r0) const {
    UniSeries r(cap);
    for (int k = 0; k <= cap; ++k) r.c[k] = c[k] * r0;
    return r;
}

UniSeries UniSeries::derivative() const {
    UniSeries r(cap);
    for (int k = 1; k <= cap; ++k) r.c[k - 1] = c[k] * k;
    r.c[cap] = 0;
    return r;
}

UniSeries UniSeries::integral() const {
    UniSeries r(cap);
    for (int k = 0; k + 1 <= cap; ++k) r.c[k + 1] = c[k] / (k + 1);
    return r;
}

UniSeries UniSeries::mult_inverse() const {
    if (c[0] == 0) throw NotInvertible("series with zero constant term");
    UniSeries r(cap);
    Rat inv0 = Rat(1) / c[0];
    r.c[0] = inv0;
    for (int k = 1; k <= cap; ++k) {
        Rat acc = 0;
        for (int j = 1; j <= k; ++j) acc += at(j) * r.c[k - j];
        r.c[k] = -acc * inv0;
    }
    return r;
}

UniSeries UniSeries::compose(const UniSeries& g) const {
    if (g.at(0) != 0) throw DomainError("composition needs g(0) = 0");
    int outcap = std::min(cap, g.cap);
    UniSeries r(outcap);
    r.c[0] = at(0);
    UniSeries gk(outcap);
    gk.c[0] = 1; // g^0
    for (int k = 1; k <= outcap; ++k) {
        gk = gk * g;
        if (at(k) == 0) continue;
        for (int j = 0; j <= outcap; ++j) r.c[j] += at(k) * gk.c[j];
    }
    return r;
}

UniSeries UniSeries::comp_inverse() const {
    if (at(0) != 0 || at(1) == 0) throw NotInvertible("no compositional inverse");
    // Newton: g <- g - (f(g) - T)/f'(g)
    UniSeries g = identity(cap).scaled(Rat(1) / c[1]);
    for (int goal = 2; goal <= cap + 1; goal *= 2) {
        UniSeries fg = compose(g) - identity(cap);
        UniSeries dfg = derivative().compose(g);
        g = g - fg * dfg.mult_inverse();
    }
    return g;
}

// ---------------------------------------------------------------------------
// formal groups
// ---------------------------------------------------------------------------

namespace {

VarsPtr law_varset(long long p) { return JetVarSet::make({"T1", "T2"}, 0, p); }

UniSeries log_one_plus_t(int cap) {
    UniSeries l(cap);
    for (int n = 1; n <= cap; ++n) l.c[n] = Rat((n % 2) ? 1 : -1) / n;
    return l;
}

// l(F(T1,T2)) == l(T1) + l(T2) through total degree M
void check_log_of_law(const FormalGroupData& G) {
    TruncLimits lim{.total_cap = G.trunc};
    DeltaPoly acc = DeltaPoly::zero(G.law_vars);
    DeltaPoly Fk = DeltaPoly::constant(G.law_vars, 1);
    for (int k = 0; k <= G.trunc; ++k) {
        if (k > 0) Fk = Fk.mul(G.law, lim);
        if (G.log.at(k) != 0) acc += Fk.scaled(G.log.at(k));
    }
    DeltaPoly expect = DeltaPoly::zero(G.law_vars);
    for (int k = 1; k <= G.trunc; ++k) {
        if (G.log.at(k) == 0) continue;
        expect += DeltaPoly::variable(G.law_vars, 0, 0, k).scaled(G.log.at(k));
        expect += DeltaPoly::variable(G.law_vars, 1, 0, k).scaled(G.log.at(k));
    }
    if (!(acc - expect).is_zero())
        throw IntegralityFailure("formal logarithm does not linearize the law");
}

} // namespace

FormalGroupData make_ga_group(long long p, int trunc) {
    FormalGroupData G{GroupKind::Ga, p, trunc, law_varset(p), DeltaPoly(), UniSeries(trunc)};
    G.law = DeltaPoly::variable(G.law_vars, 0, 0) + DeltaPoly::variable(G.law_vars, 1, 0);
    G.log = UniSeries::identity(trunc);
    return G;
}

FormalGroupData make_gm_group(long long p, int trunc) {
    FormalGroupData G{GroupKind::Gm, p, trunc, law_varset(p), DeltaPoly(), UniSeries(trunc)};
    auto T1 = DeltaPoly::variable(G.law_vars, 0, 0);
    auto T2 = DeltaPoly::variable(G.law_vars, 1, 0);
    G.law = T1 + T2 + T1 * T2;
    G.log = log_one_plus_t(trunc);
    check_log_of_law(G);
    return G;
}

UniSeries elliptic_log(const Int& a4, const Int& a6, int cap) {
    // s needs headroom: u(k) = s(k+3), and omega uses v' (one more degree)
    const int icap = cap + 4;
    // s(t) = t^3 + a4 t s^2 + a6 s^3, solved by iteration (t = -x/y, s = -1/y)
    UniSeries t3(icap);
    t3.c[3] = 1;
    UniSeries tser = UniSeries::identity(icap);
    UniSeries s = t3;
    for (int it = 0; 4 * it <= icap; ++it)
        s = t3 + (tser * s * s).scaled(Rat(a4)) + (s * s * s).scaled(Rat(a6));

    // s = t^3 * u with u a unit series; x t^2 = 1/u, y t^3 = -1/u
    UniSeries u(icap - 3);
    for (int k = 0; k <= icap - 3; ++k) u.c[k] = s.at(k + 3);
    UniSeries v = u.mult_inverse(); // = x t^2

    // omega = dx/(2y) = (2v - t v') / (2v) dt ; l = integral of omega
    UniSeries tser2 = UniSeries::identity(icap - 3);
    UniSeries num = v.scaled(Rat(2)) - tser2 * v.derivative();
    UniSeries omega = num * v.mult_inverse().scaled(Rat(1, 2));
    if (omega.at(0) != 1) throw IntegralityFailure("invariant differential not normalized");
    UniSeries log = omega.integral();
    UniSeries out(cap);
    for (int k = 0; k <= cap; ++k) out.c[k] = log.at(k);
    return out;
}

FormalGroupData make_elliptic_group(long long p, int trunc, const Int& a4, const Int& a6) {
    const int cap = trunc + 6;
    UniSeries log = elliptic_log(a4, a6, cap);
    UniSeries exp = log.comp_inverse();

    FormalGroupData G{GroupKind::Elliptic, p, trunc, law_varset(p), DeltaPoly(), UniSeries(trunc)};
    for (int k = 0; k <= trunc; ++k) G.log.c[k] = log.at(k);

    // F = exp(l(T1) + l(T2)) through total degree trunc
    TruncLimits lim{.total_cap = trunc};
    DeltaPoly z = DeltaPoly::zero(G.law_vars);
    for (int k = 1; k <= trunc; ++k) {
        if (log.at(k) == 0) continue;
        z += DeltaPoly::variable(G.law_vars, 0, 0, k).scaled(log.at(k));
        z += DeltaPoly::variable(G.law_vars, 1, 0, k).scaled(log.at(k));
    }
    DeltaPoly F = DeltaPoly::zero(G.law_vars);
    DeltaPoly zk = DeltaPoly::constant(G.law_vars, 1);
    for (int k = 1; k <= trunc; ++k) {
        zk = zk.mul(z, lim);
        if (exp.at(k) != 0) F += zk.scaled(exp.at(k));
    }
    if (!F.is_integral())
        throw IntegralityFailure("elliptic formal group law has non-integer coefficients");
    G.law = F;
    check_log_of_law(G);
    return G;
}

PadicElem formal_sum_tau(const FormalGroupData& G, const PadicElem& t1, const PadicElem& t2) {
    if (t1.valuation() < 1 || t2.valuation() < 1)
        throw PNotInDomain("formal parameters must vanish mod p");
    int prec = std::min({t1.prec(), t2.prec(), G.trunc + 1});
    std::vector<PadicElem> vals{t1.with_prec(prec), t2.with_prec(prec)};
    return G.law.eval(vals);
}

KernelLaw kernel_law(const FormalGroupData& G, int n) {
    if (n < 1) throw DomainError("kernel law needs order >= 1");
    const long long p = G.p;
    auto vars = JetVarSet::make({"T1", "T2"}, n, p);
    std::vector<int> vmap(G.law_vars->nvars(), -1);
    vmap[0] = vars->index(0, 0);
    vmap[1] = vars->index(1, 0);

    KernelLaw K;
    K.vars = vars;
    K.order = n;

    // Restriction to T1 = T2 = 0 commutes with ring maps, so component j+1
    // is ((delta^j F) o phi)|_0 - (component j)^p, all over p: only the full
    // iterates up to order n-1 are ever materialized.
    DeltaPoly full = G.law.transport(vars, vmap); // delta^0 F
    for (int j = 1; j <= n; ++j) {
        Int wcapI = int_pow(Int(p), (unsigned long)j) * G.trunc;
        TruncLimits lim{.weighted_cap = wcapI.convert_to<long long>()};

        // (delta^{j-1} F) o phi with T1 = T2 = 0: T_i -> p T_i',
        // T_i^(l) -> (T_i^(l))^p + p T_i^(l+1)
        std::vector<std::unique_ptr<DeltaPoly>> storage;
        std::vector<const DeltaPoly*> images(vars->nvars(), nullptr);
        for (int b = 0; b < 2; ++b) {
            for (int l = 0; l < n; ++l) {
                int v = vars->index(b, l);
                if (!full.depends_on(v)) continue;
                std::unique_ptr<DeltaPoly> img;
                if (l == 0) {
                    img = std::make_unique<DeltaPoly>(
                        DeltaPoly::variable(vars, b, 1).scaled(Rat(p)));
                } else {
                    img = std::make_unique<DeltaPoly>(
                        DeltaPoly::variable(vars, b, l, (int)p) +
                        DeltaPoly::variable(vars, b, l + 1).scaled(Rat(p)));
                }
                images[v] = img.get();
                storage.push_back(std::move(img));
            }
        }
        DeltaPoly phi_restricted = full.substitute(images, lim);
        DeltaPoly prev_pow = K.components.empty()
                                 ? DeltaPoly::zero(vars)
                                 : K.components.back().pow((unsigned long)p, lim);
        K.components.push_back((phi_restricted - prev_pow).div_p(true));

        if (j < n) full = delta(full, lim);
    }
    return K;
}

} // namespace pjet

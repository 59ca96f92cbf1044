// Batch front end: one subcommand per library capability, flat-file I/O,
// reproducible run manifests embedded in every output.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pjet/dlinear.hpp"
#include "pjet/io.hpp"
#include "pjet/witt.hpp"

using namespace pjet;
using nlohmann::json;

namespace {

struct Common {
    long long p = 5;
    int N = 12;
    int ext_degree = 1;
    std::string ext_modulus; // comma-separated integers, constant first
    int qdeg = 32;
    int jetdeg = 8;
    int order = 1;
    std::string out;
    std::string config;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--p", c.p, "prime");
    cmd->add_option("--N", c.N, "working precision (p-adic digits)");
    cmd->add_option("--ext-degree", c.ext_degree, "unramified extension degree");
    cmd->add_option("--ext-modulus", c.ext_modulus, "extension modulus, constant first");
    cmd->add_option("--qdeg", c.qdeg, "series degree cap");
    cmd->add_option("--jetdeg", c.jetdeg, "jet degree cap");
    cmd->add_option("--order", c.order, "jet order");
    cmd->add_option("--out", c.out, "output file (stdout if omitted)");
    cmd->add_option("--config", c.config, "JSON config file with the same keys");
}

void apply_config(Common& c) {
    if (c.config.empty()) return;
    std::ifstream in(c.config);
    if (!in) throw DomainError("cannot open config " + c.config);
    json j = json::parse(in);
    // config fills values the flags left at defaults; flags win
    Common defs;
    if (j.contains("p") && c.p == defs.p) c.p = j["p"].get<long long>();
    if (j.contains("N") && c.N == defs.N) c.N = j["N"].get<int>();
    if (j.contains("ext_degree") && c.ext_degree == defs.ext_degree)
        c.ext_degree = j["ext_degree"].get<int>();
    if (j.contains("qdeg") && c.qdeg == defs.qdeg) c.qdeg = j["qdeg"].get<int>();
    if (j.contains("jetdeg") && c.jetdeg == defs.jetdeg) c.jetdeg = j["jetdeg"].get<int>();
    if (j.contains("order") && c.order == defs.order) c.order = j["order"].get<int>();
}

CtxPtr make_ctx(const Common& c) {
    if (c.ext_degree <= 1 && c.ext_modulus.empty()) return PadicCtx::make(c.p, c.N);
    std::vector<Int> mod;
    std::stringstream ss(c.ext_modulus);
    std::string tok;
    while (std::getline(ss, tok, ',')) mod.push_back(Int(tok));
    return PadicCtx::make_ext(c.p, c.N, mod);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct OutputSink {
    RunManifest manifest;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void note_input(const std::string& name, const std::string& content) {
        manifest.input_digests[name] = std::to_string(fnv1a64(content));
    }
    void emit(const Common& c, json result) {
        manifest.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        json out;
        out["manifest"] = json::parse(manifest.to_json_fragment());
        out["result"] = std::move(result);
        std::string text = out.dump(2) + "\n";
        if (c.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(c.out);
            f << text;
        }
    }
};

void set_params(RunManifest& m, const Common& c) {
    m.params["p"] = std::to_string(c.p);
    m.params["N"] = std::to_string(c.N);
    m.params["ext_degree"] = std::to_string(c.ext_degree);
    m.params["qdeg"] = std::to_string(c.qdeg);
    m.params["jetdeg"] = std::to_string(c.jetdeg);
    m.params["order"] = std::to_string(c.order);
}

json curve_result_matrix(const DeltaMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.n(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.n(); ++j) row.push_back(m.at(i, j).lift().str());
        rows.push_back(row);
    }
    return rows;
}

DeltaMatrix matrix_from_json(const CtxPtr& ctx, const json& rows) {
    int n = (int)rows.size();
    DeltaMatrix m(ctx, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto& cell = rows.at(i).at(j);
            if (cell.is_string())
                m.at(i, j) = PadicElem(ctx, Int(cell.get<std::string>()));
            else
                m.at(i, j) = PadicElem(ctx, Int(cell.get<long long>()));
        }
    return m;
}

struct CurveInput {
    EllipticCurveData curve;
    std::optional<NewformData> newform;
};

CurveInput load_curve(const Common& c, const std::string& path, OutputSink& sink, int need_an) {
    std::string text = read_file(path);
    sink.note_input("curve", text);
    json j = json::parse(text);
    long long p = j.value("p", c.p);
    int N = j.value("N", c.N);
    auto ctx = PadicCtx::make(p, N);
    std::optional<long long> ap;
    if (j.contains("ap")) ap = j["ap"].get<long long>();
    CurveInput in{make_elliptic_curve(ctx, Int(j.at("a4").get<std::string>()),
                                      Int(j.at("a6").get<std::string>()), ap),
                  std::nullopt};
    if (j.contains("newform_a")) {
        NewformData nf;
        nf.level = j.value("level", 0LL);
        nf.a.push_back(0);
        for (const auto& a : j["newform_a"]) nf.a.push_back(a.get<long long>());
        in.newform = nf;
    } else if (j.contains("minimal")) {
        std::vector<Int> a15;
        for (const auto& a : j["minimal"]) a15.push_back(Int(a.get<long long>()));
        in.newform = newform_from_curve(a15, j.value("level", 0LL), need_an);
    }
    return in;
}

std::vector<Rat> rat_list_from_string(const std::string& text) {
    // "[a, b/c, ...]"
    json j = json::parse(text);
    std::vector<Rat> out;
    for (const auto& e : j) {
        std::string s = e.is_string() ? e.get<std::string>() : e.dump();
        auto slash = s.find('/');
        out.push_back(slash == std::string::npos
                          ? Rat(Int(s))
                          : Rat(Int(s.substr(0, slash))) / Rat(Int(s.substr(slash + 1))));
    }
    return out;
}

json rat_list_to_json(const std::vector<Rat>& v) {
    json a = json::array();
    for (const auto& x : v) {
        std::ostringstream os;
        os << x;
        a.push_back(os.str());
    }
    return a;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact p-adic differential calculus: p-derivations, jet spaces, "
                 "delta-characters, Witt vectors, delta-linear equations"};
    app.require_subcommand(1);

    // every subcommand shares the common flag block
    std::map<std::string, Common> C;
    auto sub = [&](const std::string& name, const std::string& desc) {
        CLI::App* s = app.add_subcommand(name, desc);
        add_common(s, C[name]);
        return s;
    };

    // delta
    std::string delta_value = "2";
    auto* cmd_delta = sub("delta", "Fermat quotient of a value");
    cmd_delta->add_option("--value", delta_value, "integer (or a/b with b prime to p)");

    // teich
    std::string teich_c = "1";
    auto* cmd_teich = sub("teich", "Teichmuller representative of a residue");
    cmd_teich->add_option("--c", teich_c, "residue class");

    // jet
    std::string jet_scheme;
    auto* cmd_jet = sub("jet", "jet-space presentation of an affine scheme");
    cmd_jet->add_option("--scheme", jet_scheme, "scheme JSON file")->required();

    // jet-point
    std::string jp_scheme, jp_point;
    auto* cmd_jp = sub("jet-point", "jet of a point on a scheme");
    cmd_jp->add_option("--scheme", jp_scheme)->required();
    cmd_jp->add_option("--point", jp_point, "JSON list of coordinate digits")->required();

    // member
    std::string mem_scheme, mem_poly;
    auto* cmd_mem = sub("member", "mod-p jet ideal membership");
    cmd_mem->add_option("--scheme", mem_scheme)->required();
    cmd_mem->add_option("--poly", mem_poly, "polynomial in the text grammar")->required();

    // kernel-law
    std::string kl_group = "gm";
    std::string kl_a4 = "0", kl_a6 = "0";
    auto* cmd_kl = sub("kernel-law", "kernel composition law of J^n(G) -> G");
    cmd_kl->add_option("--group", kl_group, "ga | gm | elliptic");
    cmd_kl->add_option("--a4", kl_a4);
    cmd_kl->add_option("--a6", kl_a6);

    // ap
    std::string ap_a4 = "0", ap_a6 = "0", ap_minimal;
    auto* cmd_ap = sub("ap", "trace of Frobenius by point counting");
    cmd_ap->add_option("--a4", ap_a4);
    cmd_ap->add_option("--a6", ap_a6);
    cmd_ap->add_option("--minimal", ap_minimal, "a1,a2,a3,a4,a6 long model");

    // psi
    std::string psi_curve;
    auto* cmd_psi = sub("psi", "order-2 delta-character of an elliptic curve");
    cmd_psi->add_option("--curve", psi_curve)->required();

    // psi-eval
    std::string pe_curve, pe_x, pe_y, pe_tau;
    long long pe_m = 0;
    auto* cmd_pe = sub("psi-eval", "evaluate the delta-character at a point");
    cmd_pe->add_option("--curve", pe_curve)->required();
    cmd_pe->add_option("--x", pe_x);
    cmd_pe->add_option("--y", pe_y);
    cmd_pe->add_option("--tau", pe_tau, "formal parameter of a kernel point");
    cmd_pe->add_option("--m", pe_m, "prime-to-p translation multiple");

    // f1
    auto* cmd_f1 = sub("f1", "the order-1 delta-series with zero Fourier part");
    int f1_nmax = 10;
    cmd_f1->add_option("--nmax", f1_nmax);

    // fsharp
    std::string fs_curve;
    auto* cmd_fs = sub("fsharp", "mod-p delta-Fourier expansion, formula vs construction");
    cmd_fs->add_option("--curve", fs_curve)->required();

    // ldelta
    std::string ld_u;
    auto* cmd_ld = sub("ldelta", "arithmetic logarithmic derivative, canonical flow");
    cmd_ld->add_option("--u", ld_u, "row-major JSON matrix")->required();

    // solve-linear
    std::string sl_alpha, sl_u0;
    auto* cmd_sl = sub("solve-linear", "solve delta u = alpha u^(p)");
    cmd_sl->add_option("--alpha", sl_alpha, "row-major JSON matrix")->required();
    cmd_sl->add_option("--u0", sl_u0, "initial matrix mod p (default identity)");

    // galois
    std::string ga_u, ga_subring = "zp";
    long long ga_cap = 2000000;
    auto* cmd_ga = sub("galois", "delta-Galois group enumeration at precision N");
    cmd_ga->add_option("--u", ga_u, "row-major JSON matrix")->required();
    cmd_ga->add_option("--subring", ga_subring, "zp | teich");
    cmd_ga->add_option("--cap", ga_cap, "search cap");

    // flow-check
    std::string fc_group = "sp";
    int fc_n = 2, fc_solve_deg = 0, fc_det_pow = 0, fc_kmax = 2;
    auto* cmd_fc = sub("flow-check", "quadratic-map horizontality / symmetry report");
    cmd_fc->add_option("--group", fc_group, "gl | sp | so-even | so-odd");
    cmd_fc->add_option("--n", fc_n);
    cmd_fc->add_option("--solve-deg", fc_solve_deg, "solve for a flow mod p at this degree");
    cmd_fc->add_option("--det-pow", fc_det_pow);
    cmd_fc->add_option("--kmax", fc_kmax);

    // witt
    std::string w_op = "add", w_u = "[0,1]", w_v = "[0,1]";
    int w_len = 2, w_mo = 1, w_mi = 1, w_m = 1;
    auto* cmd_w = sub("witt", "Witt vector operations");
    cmd_w->add_option("op", w_op, "add|mul|ghost|present|comonad|w1check")->required();
    cmd_w->add_option("--len", w_len);
    cmd_w->add_option("--u", w_u);
    cmd_w->add_option("--v", w_v);
    cmd_w->add_option("--mo", w_mo, "outer length m'");
    cmd_w->add_option("--mi", w_mi, "inner length m''");
    cmd_w->add_option("--m", w_m, "presentation size");

    // hecke-p
    std::string hp_series;
    int hp_m = 0, hp_scap = 8;
    auto* cmd_hp = sub("hecke-p", "the mod-p operator \"pT_m(p)\"");
    cmd_hp->add_option("--series", hp_series, "series JSON file")->required();
    cmd_hp->add_option("--m", hp_m, "weight degree");
    cmd_hp->add_option("--s-cap", hp_scap, "degree cap for the symmetric solve");

    // u-op
    std::string uo_series;
    auto* cmd_uo = sub("u-op", "classical U-operator on the q-part");
    cmd_uo->add_option("--series", uo_series)->required();

    CLI11_PARSE(app, argc, argv);

    std::string name = app.get_subcommands().front()->get_name();
    Common& c = C[name];
    OutputSink sink;
    sink.manifest.command = name;

    try {
        apply_config(c);
        set_params(sink.manifest, c);

        if (name == "delta") {
            auto ctx = make_ctx(c);
            auto slash = delta_value.find('/');
            PadicElem a = slash == std::string::npos
                              ? PadicElem(ctx, Int(delta_value))
                              : PadicElem::from_rational(
                                    ctx, Rat(Int(delta_value.substr(0, slash))) /
                                             Rat(Int(delta_value.substr(slash + 1))));
            PadicElem d = fermat_quotient(a);
            json r;
            r["residue"] = d.lift().str();
            r["balanced"] = ctx->ext_degree() == 1 ? d.balanced().str() : d.lift().str();
            r["prec"] = d.prec();
            sink.emit(c, r);
        } else if (name == "teich") {
            auto ctx = make_ctx(c);
            PadicElem t = teichmuller(ctx, Int(teich_c));
            json r;
            r["value"] = t.to_string();
            sink.emit(c, r);
        } else if (name == "jet") {
            std::string text = read_file(jet_scheme);
            sink.note_input("scheme", text);
            auto X = scheme_from_json(text);
            auto J = build_jet(X, c.order);
            json r;
            r["order"] = J.order;
            json vars = json::array();
            for (int v = 0; v < J.vars->nvars(); ++v) vars.push_back(J.vars->var_name(v));
            r["vars"] = vars;
            json rel = json::array();
            for (const auto& row : J.relations) {
                json jr = json::array();
                for (const auto& f : row) jr.push_back(print_poly(f));
                rel.push_back(jr);
            }
            r["relations"] = rel;
            sink.emit(c, r);
        } else if (name == "jet-point") {
            std::string text = read_file(jp_scheme);
            sink.note_input("scheme", text);
            auto X = scheme_from_json(text);
            auto ctx = PadicCtx::make(X.vars->p(), c.N);
            std::vector<PadicElem> alpha;
            for (const auto& v : json::parse(jp_point))
                alpha.push_back(PadicElem(ctx, Int(v.get<std::string>())));
            auto jets = jet_of_point(X, c.order, alpha);
            json r = json::array();
            for (const auto& row : jets) {
                json jr = json::array();
                for (const auto& e : row) jr.push_back(e.lift().str());
                r.push_back(jr);
            }
            json res;
            res["jets"] = r;
            res["prec"] = jets.empty() ? c.N : jets[0].back().prec();
            sink.emit(c, res);
        } else if (name == "member") {
            std::string text = read_file(mem_scheme);
            sink.note_input("scheme", text);
            auto X = scheme_from_json(text);
            auto J = build_jet(X, c.order);
            DeltaPoly g = parse_poly(J.vars, mem_poly);
            json r;
            r["member"] = ideal_membership_mod_p(g, J);
            sink.emit(c, r);
        } else if (name == "kernel-law") {
            FormalGroupData G = kl_group == "ga" ? make_ga_group(c.p, c.qdeg)
                                : kl_group == "gm"
                                    ? make_gm_group(c.p, c.qdeg)
                                    : make_elliptic_group(c.p, c.qdeg, Int(kl_a4), Int(kl_a6));
            auto K = kernel_law(G, c.order);
            json r = json::array();
            for (const auto& comp : K.components) r.push_back(print_poly(comp));
            json res;
            res["components"] = r;
            sink.emit(c, res);
        } else if (name == "ap") {
            json r;
            if (!ap_minimal.empty()) {
                std::vector<Int> a15;
                std::stringstream ss(ap_minimal);
                std::string tok;
                while (std::getline(ss, tok, ',')) a15.push_back(Int(tok));
                auto t = trace_of_frobenius(c.p, a15);
                r["a"] = t.a;
                r["reduction"] = t.kind == ReductionKind::Good          ? "good"
                                 : t.kind == ReductionKind::SplitMult   ? "split"
                                 : t.kind == ReductionKind::NonsplitMult ? "nonsplit"
                                                                         : "additive";
            } else {
                long long a = count_points_ap(c.p, Int(ap_a4), Int(ap_a6));
                r["a"] = a;
                r["supersingular"] = (a % c.p == 0);
            }
            sink.emit(c, r);
        } else if (name == "psi") {
            auto in = load_curve(c, psi_curve, sink, 0);
            auto psi = elliptic_delta_character(in.curve, c.qdeg);
            json r;
            r["ap"] = in.curve.ap;
            r["series"] = print_poly(psi.psi);
            r["weight_cap"] = psi.weight_cap;
            sink.emit(c, r);
        } else if (name == "psi-eval") {
            auto in = load_curve(c, pe_curve, sink, 0);
            auto psi = elliptic_delta_character(in.curve, c.qdeg);
            PadicElem val = PadicElem::zero(in.curve.ctx);
            if (!pe_tau.empty()) {
                val = psi_star_elliptic_tau(psi, PadicElem(in.curve.ctx, Int(pe_tau)));
            } else {
                auto P = ec_affine(in.curve, PadicElem(in.curve.ctx, Int(pe_x)),
                                   PadicElem(in.curve.ctx, Int(pe_y)));
                val = psi_star_point(psi, in.curve, P,
                                     pe_m > 0 ? std::optional<long long>(pe_m) : std::nullopt);
            }
            json r;
            r["value"] = val.lift().str();
            r["prec"] = val.prec();
            sink.emit(c, r);
        } else if (name == "f1") {
            auto s = f1_series(c.p, f1_nmax);
            json r;
            r["series"] = print_poly(s.s);
            r["file"] = json::parse(dseries_to_json(s));
            sink.emit(c, r);
        } else if (name == "fsharp") {
            auto in = load_curve(c, fs_curve, sink, c.qdeg);
            if (!in.newform) throw DomainError("curve file carries no newform data");
            auto rep = fsharp_expansion(in.curve, *in.newform, c.qdeg);
            json r;
            r["congruent_mod_p"] = rep.congruent;
            r["q_degree"] = rep.q_degree;
            r["formula"] = print_poly(rep.formula.s);
            r["constructed"] = print_poly(rep.constructed.s);
            r["difference"] = print_poly(rep.difference.s);
            sink.emit(c, r);
        } else if (name == "ldelta") {
            auto ctx = make_ctx(c);
            auto u = matrix_from_json(ctx, json::parse(ld_u));
            auto l = ldelta(u, canonical_flow(c.p, u.n()));
            json r;
            r["matrix"] = curve_result_matrix(l);
            r["prec"] = l.prec();
            sink.emit(c, r);
        } else if (name == "solve-linear") {
            auto ctx = make_ctx(c);
            auto alpha = matrix_from_json(ctx, json::parse(sl_alpha));
            DeltaMatrix u0 = sl_u0.empty() ? DeltaMatrix::identity(ctx, alpha.n())
                                           : matrix_from_json(ctx, json::parse(sl_u0));
            auto u = solve_delta_linear(alpha, u0);
            auto res = delta_linear_residual(alpha, u);
            json r;
            r["u"] = curve_result_matrix(u);
            r["residual_zero"] = res.is_zero_mod(res.prec());
            r["residual_prec"] = res.prec();
            sink.emit(c, r);
        } else if (name == "galois") {
            auto ctx = make_ctx(c);
            auto u = matrix_from_json(ctx, json::parse(ga_u));
            GaloisOptions opt;
            opt.search_cap = ga_cap;
            auto G = delta_galois_group(
                u, ga_subring == "teich" ? OSubring::TeichmullerGenerated : OSubring::PrimeRing,
                opt);
            json r;
            r["precision"] = c.N;
            json els = json::array();
            for (const auto& g : G) els.push_back(curve_result_matrix(g));
            r["elements"] = els;
            r["size"] = G.size();
            sink.emit(c, r);
        } else if (name == "flow-check") {
            GroupTag tag = fc_group == "gl"        ? GroupTag::GL
                           : fc_group == "sp"      ? GroupTag::Sp
                           : fc_group == "so-even" ? GroupTag::SOeven
                                                   : GroupTag::SOodd;
            auto H = canonical_quadratic_map(tag, fc_n);
            DeltaFlow flow = canonical_flow(c.p, fc_n);
            bool solved = false;
            if (fc_solve_deg > 0) {
                auto s = solve_flow_horizontal_mod_p(c.p, H, fc_solve_deg, fc_det_pow);
                if (!s) throw DomainError("no flow at this degree bound");
                flow = *s;
                solved = true;
            }
            auto rep = check_flow_compatibility(flow, H, fc_kmax);
            json r;
            r["flow_solved_mod_p"] = solved;
            if (solved) {
                json entries = json::array();
                for (const auto& e : flow.entries) entries.push_back(print_poly(e));
                r["flow_entries"] = entries;
                r["det_pow"] = flow.det_pow;
            }
            r["horizontal"] = rep.horizontal;
            r["horizontal_mod_p2"] = rep.horizontal_mod_p2;
            r["symmetric"] = rep.symmetric;
            if (rep.horizontality_witness)
                r["witness"] = print_poly(*rep.horizontality_witness);
            json st = json::array();
            for (bool b : rep.ideal_stable_mod_pk) st.push_back(b);
            r["ideal_stable_mod_pk"] = st;
            sink.emit(c, r);
        } else if (name == "witt") {
            json r;
            if (w_op == "present") {
                auto P = witt_presentation(c.p, w_m);
                json rel = json::array();
                for (const auto& f : P.relations) rel.push_back(print_poly(f));
                r["generators"] = w_m;
                r["relations"] = rel;
                r["verified"] = true;
            } else if (w_op == "w1check") {
                auto ctx = make_ctx(c);
                std::vector<PadicElem> sample;
                for (int i = 2; i < 12; ++i) sample.push_back(PadicElem(ctx, 3 * i + 1));
                auto rep = w1_hom_check(sample);
                r["ok"] = rep.ok;
                r["pairs"] = rep.pairs_checked;
            } else {
                auto u = rat_list_from_string(w_u);
                if (w_op == "ghost") {
                    r["ghost"] = rat_list_to_json(witt_ghost(c.p, u));
                } else if (w_op == "comonad") {
                    auto img = comonad_map(c.p, u, w_mo, w_mi);
                    json outer = json::array();
                    for (const auto& inner : img) outer.push_back(rat_list_to_json(inner));
                    r["image"] = outer;
                } else {
                    auto v = rat_list_from_string(w_v);
                    auto res = w_op == "add" ? witt_add(c.p, u, v) : witt_mul(c.p, u, v);
                    r[w_op] = rat_list_to_json(res);
                }
            }
            sink.emit(c, r);
        } else if (name == "hecke-p") {
            std::string text = read_file(hp_series);
            sink.note_input("series", text);
            auto s = dseries_from_json(text);
            HeckeOptions opt;
            opt.s_degree_cap = hp_scap;
            auto h = hecke_pTm(s, hp_m, opt);
            json r;
            r["series"] = print_poly(h.s);
            r["file"] = json::parse(dseries_to_json(h));
            sink.emit(c, r);
        } else if (name == "u-op") {
            std::string text = read_file(uo_series);
            sink.note_input("series", text);
            auto s = dseries_from_json(text);
            auto us = u_operator(s);
            json r;
            r["series"] = print_poly(us.s);
            r["file"] = json::parse(dseries_to_json(us));
            sink.emit(c, r);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

#include "pjet/io.hpp"

#include <sstream>

#include <json.hpp>

namespace pjet {

unsigned long long fnv1a64(const std::string& data) {
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string RunManifest::to_json_fragment() const {
    nlohmann::json j;
    j["command"] = command;
    j["params"] = params;
    j["inputs"] = input_digests;
    j["version"] = version;
    j["wall_seconds"] = wall_seconds;
    return j.dump();
}

std::string dseries_to_json(const DSeries& s) {
    nlohmann::json j;
    j["p"] = s.meta.p;
    j["mode"] = s.meta.mod_p ? "mod_p" : "exact";
    j["M"] = s.meta.q_high;
    j["q_low"] = s.meta.q_low;
    j["D"] = s.meta.jet_cap;
    j["r"] = s.meta.r;
    nlohmann::json terms = nlohmann::json::array();
    const int qv = s.vars->index(0, 0);
    for (const auto& [m, c] : s.s.terms()) { // canonical grlex order
        nlohmann::json jm = nlohmann::json::array();
        jm.push_back((long long)m[qv]);
        nlohmann::json jets = nlohmann::json::array();
        for (int k = 1; k <= s.meta.r; ++k) jets.push_back((long long)m[s.vars->index(0, k)]);
        jm.push_back(jets);
        std::ostringstream cs;
        cs << c;
        jm.push_back(cs.str());
        terms.push_back(jm);
    }
    j["terms"] = terms;
    return j.dump();
}

DSeries dseries_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    DSeries s = make_dseries(j.at("p").get<long long>(), j.at("r").get<int>(),
                             j.value("q_low", 0), j.at("M").get<int>(), j.at("D").get<int>());
    s.meta.mod_p = j.value("mode", "exact") == std::string("mod_p");
    for (const auto& t : j.at("terms")) {
        Mono m(s.vars->nvars(), 0);
        m[s.vars->index(0, 0)] = t.at(0).get<int>();
        const auto& jets = t.at(1);
        for (int k = 1; k <= s.meta.r && k <= (int)jets.size(); ++k)
            m[s.vars->index(0, k)] = jets.at(k - 1).get<int>();
        std::string cs = t.at(2).get<std::string>();
        auto slash = cs.find('/');
        Rat c = slash == std::string::npos
                    ? Rat(Int(cs))
                    : Rat(Int(cs.substr(0, slash))) / Rat(Int(cs.substr(slash + 1)));
        s.s.add_term(m, c);
    }
    return s;
}

std::string scheme_to_json(const SchemePresentation& X) {
    nlohmann::json j;
    j["prime"] = X.vars->p();
    nlohmann::json names = nlohmann::json::array();
    for (int i = 0; i < X.vars->nbase(); ++i) names.push_back(X.vars->base_name(i));
    j["vars"] = names;
    nlohmann::json rels = nlohmann::json::array();
    for (const auto& f : X.relations) rels.push_back(print_poly(f));
    j["relations"] = rels;
    j["label"] = X.label;
    return j.dump();
}

SchemePresentation scheme_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<std::string> names;
    for (const auto& n : j.at("vars")) names.push_back(n.get<std::string>());
    auto vars = JetVarSet::make(names, 0, j.at("prime").get<long long>());
    std::vector<DeltaPoly> rels;
    for (const auto& r : j.at("relations")) rels.push_back(parse_poly(vars, r.get<std::string>()));
    return SchemePresentation::make(vars, std::move(rels), j.value("label", ""));
}

} // namespace pjet

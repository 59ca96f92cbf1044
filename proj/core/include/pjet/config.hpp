#pragma once

namespace pjet {

// Central defaults for every tunable cap.  CLI flags and config files
// override these; library calls take explicit values.
struct Defaults {
    int precision = 12;        // N: p-adic working digits
    int series_degree = 32;    // M: series truncation degree
    int poly_degree = 8;       // D: joint degree bound for symmetric solves
    int jet_order = 2;         // r: jet order for delta-series
    int groebner_deg_cap = 64; // max total degree during Buchberger
    int groebner_pair_cap = 200000;
    long long galois_search_cap = 2000000;
};

inline const Defaults& defaults() {
    static Defaults d;
    return d;
}

} // namespace pjet

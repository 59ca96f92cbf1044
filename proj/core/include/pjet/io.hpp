#pragma once

#include <map>
#include <string>

#include "pjet/dseries.hpp"
#include "pjet/jetspace.hpp"

namespace pjet {

inline constexpr const char* kToolVersion = "pjet 0.3.0";

// FNV-1a, used for input digests in run manifests
unsigned long long fnv1a64(const std::string& data);

// Reproducibility record embedded in every output file.  Identical manifests
// imply bit-identical outputs: all serialization below is canonically ordered.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> params;
    std::map<std::string, std::string> input_digests;
    std::string version = kToolVersion;
    double wall_seconds = 0.0;

    std::string to_json_fragment() const; // object, sorted keys
};

// canonical text forms used by both the CLI and the test suites
std::string dseries_to_json(const DSeries& s);
DSeries dseries_from_json(const std::string& text);

std::string scheme_to_json(const SchemePresentation& X);
SchemePresentation scheme_from_json(const std::string& text);

} // namespace pjet

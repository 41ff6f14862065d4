// report.hpp
// Structured outcome of one lemma/theorem check: instance parameters,
// pass/fail, witnesses, and margins. Serialized with a fixed key order so
// repeated runs are byte-identical.

#pragma once

#include <string>

#include <json.hpp>

namespace gpl {

struct VerificationReport {
    std::string claim;                  // which statement was checked
    nlohmann::ordered_json params;      // instance parameters
    bool pass = false;
    // A failing check is "hard" only inside the statement's guaranteed
    // regime (explicit thresholds); elsewhere results are observational.
    bool hard = false;
    nlohmann::ordered_json margins = nlohmann::ordered_json::object();
    nlohmann::ordered_json witnesses = nlohmann::ordered_json::array();
    nlohmann::ordered_json notes = nlohmann::ordered_json::object();

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["claim"] = claim;
        j["params"] = params;
        j["pass"] = pass;
        j["hard"] = hard;
        j["margins"] = margins;
        j["witnesses"] = witnesses;
        j["notes"] = notes;
        return j;
    }
};

}  // namespace gpl

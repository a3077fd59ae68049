#pragma once

// Structured verdict reports and their JSON / text rendering.

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "modrep/dvr.hpp"

namespace modrep {

using json = nlohmann::ordered_json;

enum class Verdict { Confirmed, Refuted, Indeterminate };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Confirmed: return "CONFIRMED";
        case Verdict::Refuted: return "REFUTED";
        default: return "INDETERMINATE";
    }
}

inline Verdict confirm_if(bool ok) { return ok ? Verdict::Confirmed : Verdict::Refuted; }

struct Report {
    std::string claim;
    std::string anchor;
    json inputs = json::object();
    json computed = json::object();
    Verdict verdict = Verdict::Indeterminate;
    std::string error;       // set when a precision or search bound stopped the check
    bool precision = false;  // the error was a precision shortfall
};

inline json to_json(const Report& r) {
    json j;
    j["claim"] = r.claim;
    j["anchor"] = r.anchor;
    j["inputs"] = r.inputs;
    j["computed_values"] = r.computed;
    j["verdict"] = verdict_name(r.verdict);
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

/// Runs a check; precision and search-bound failures become INDETERMINATE
/// reports instead of escaping.
inline Report guarded(std::string claim, std::string anchor, json inputs, const std::function<void(Report&)>& body) {
    Report r;
    r.claim = std::move(claim);
    r.anchor = std::move(anchor);
    r.inputs = std::move(inputs);
    try {
        body(r);
    } catch (const precision_error& e) {
        r.verdict = Verdict::Indeterminate;
        r.error = std::string("precision: ") + e.what();
        r.precision = true;
    } catch (const indeterminate_error& e) {
        r.verdict = Verdict::Indeterminate;
        r.error = std::string("search bound: ") + e.what();
    } catch (const std::exception& e) {
        r.verdict = Verdict::Indeterminate;
        r.error = std::string("internal: ") + e.what();
    }
    return r;
}

struct Tally {
    int confirmed = 0, refuted = 0, indeterminate = 0, precision = 0;
    void add(const Report& r) {
        if (r.verdict == Verdict::Confirmed) ++confirmed;
        else if (r.verdict == Verdict::Refuted) ++refuted;
        else ++indeterminate;
        if (r.precision) ++precision;
    }
    /// 0 all confirmed, 1 refuted, 3 precision, 4 indeterminate.
    int exit_code() const {
        if (refuted) return 1;
        if (precision) return 3;
        if (indeterminate) return 4;
        return 0;
    }
    json to_json() const {
        return json{{"confirmed", confirmed}, {"refuted", refuted}, {"indeterminate", indeterminate}, {"precision", precision}};
    }
};

inline std::string render_text(const std::string& title, const std::vector<Report>& reports) {
    std::ostringstream os;
    os << "# " << title << "\n";
    Tally t;
    for (const auto& r : reports) {
        t.add(r);
        os << verdict_name(r.verdict) << "  " << r.claim << "  [" << r.anchor << "]  " << r.inputs.dump();
        if (!r.computed.empty()) os << "  " << r.computed.dump();
        if (!r.error.empty()) os << "  error=" << r.error;
        os << "\n";
    }
    os << "summary: " << t.to_json().dump() << "\n";
    return os.str();
}

}  // namespace modrep

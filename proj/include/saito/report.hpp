#pragma once

// Reports produced by the command-line front end: titled key/value sections
// for people, a JSON object with stable field names for machines.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "saito/verify.hpp"

namespace saito {

enum class Format { Text, Json };

struct Section {
    std::string title;
    std::vector<std::pair<std::string, std::string>> rows;

    Section& row(std::string key, std::string value) {
        rows.emplace_back(std::move(key), std::move(value));
        return *this;
    }
};

struct Report {
    std::vector<Section> sections;
    std::vector<Check> checks;
    std::vector<std::string> notes;
    nlohmann::json fields = nlohmann::json::object();

    bool empty() const { return sections.empty() && checks.empty() && notes.empty() && fields.empty(); }
    bool passed() const { return all_pass(checks); }
    /// "PASS"/"FAIL" when there are checks, "INFO" otherwise.
    std::string status() const { return checks.empty() ? "INFO" : passed() ? "PASS" : "FAIL"; }

    Section& section(std::string title) {
        sections.push_back(Section{std::move(title), {}});
        return sections.back();
    }

    void append(Report other) {
        for (auto& s : other.sections) sections.push_back(std::move(s));
        for (auto& c : other.checks) checks.push_back(std::move(c));
        for (auto& n : other.notes) notes.push_back(std::move(n));
        for (auto& [k, v] : other.fields.items()) fields[k] = std::move(v);
    }
};

inline std::string emit_text(const Report& r) {
    std::string out;
    for (const auto& s : r.sections) {
        if (!out.empty()) out += "\n";
        out += "== " + s.title + " ==\n";
        std::size_t w = 0;
        for (const auto& [k, v] : s.rows) w = std::max(w, k.size());
        for (const auto& [k, v] : s.rows) {
            if (k.empty()) out += v.ends_with('\n') ? v : v + "\n"; // preformatted block
            else out += k + std::string(w - k.size() + 2, ' ') + v + "\n";
        }
    }
    if (!r.checks.empty()) {
        if (!out.empty()) out += "\n";
        for (const auto& c : r.checks) {
            out += std::string("[") + c.status() + "] " + c.name + "\n";
            out += "    lhs  " + c.lhs + "\n";
            out += "    rhs  " + c.rhs + "\n";
        }
    }
    for (const auto& n : r.notes) out += "note: " + n + "\n";
    if (!r.checks.empty()) out += "status: " + r.status() + "\n";
    return out;
}

inline std::string emit_json(const Report& r) {
    if (r.empty()) return "{}\n";
    nlohmann::json j = r.fields;
    j["schema"] = 1;
    j["status"] = r.status();
    if (!r.checks.empty()) {
        auto& arr = j["checks"] = nlohmann::json::array();
        for (const auto& c : r.checks)
            arr.push_back({{"name", c.name}, {"status", c.status()}, {"lhs", c.lhs}, {"rhs", c.rhs}});
    }
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j.dump(2) + "\n";
}

inline std::string emit(const Report& r, Format f) { return f == Format::Json ? emit_json(r) : emit_text(r); }

} // namespace saito

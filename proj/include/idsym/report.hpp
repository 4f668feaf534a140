#pragma once

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "idsym/linalg.hpp"

namespace idsym {

/// One verified identity: a stable id, the result it instantiates, the
/// normalized residual, and the verdict.
struct CheckEntry {
    std::string id;
    std::string anchor;
    double residual = 0.0;
    bool pass = false;
};

/// What the checks ran against.
struct InstanceInfo {
    Index n = 0;
    std::optional<Index> r;
    std::optional<std::uint64_t> seed;
    std::optional<double> norm_cap;
    std::string label;
};

struct Report {
    InstanceInfo instance;
    std::vector<CheckEntry> entries;

    bool pass() const {
        return std::all_of(entries.begin(), entries.end(),
                           [](const CheckEntry& e) { return e.pass; });
    }
};

inline nlohmann::json to_json(const Report& rep) {
    nlohmann::json inst{{"n", rep.instance.n}};
    if (rep.instance.r) inst["r"] = *rep.instance.r;
    if (rep.instance.seed) inst["seed"] = *rep.instance.seed;
    if (rep.instance.norm_cap) inst["norm_cap"] = *rep.instance.norm_cap;
    if (!rep.instance.label.empty()) inst["label"] = rep.instance.label;
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckEntry& e : rep.entries)
        checks.push_back({{"id", e.id},
                          {"anchor", e.anchor},
                          {"residual", e.residual},
                          {"pass", e.pass}});
    return nlohmann::json{{"instance", std::move(inst)},
                          {"checks", std::move(checks)},
                          {"pass", rep.pass()}};
}

inline void print_table(std::ostream& os, const Report& rep) {
    std::size_t wid = 5, wanchor = 6;
    for (const CheckEntry& e : rep.entries) {
        wid = std::max(wid, e.id.size());
        wanchor = std::max(wanchor, e.anchor.size());
    }
    if (!rep.instance.label.empty()) os << "instance: " << rep.instance.label << "\n";
    os << "n = " << rep.instance.n;
    if (rep.instance.r) os << ", r = " << *rep.instance.r;
    if (rep.instance.seed) os << ", seed = " << *rep.instance.seed;
    if (rep.instance.norm_cap) os << ", norm_cap = " << *rep.instance.norm_cap;
    os << "\n";
    os << std::left << std::setw(static_cast<int>(wid) + 2) << "check"
       << std::setw(static_cast<int>(wanchor) + 2) << "anchor"
       << std::setw(14) << "residual"
       << "result\n";
    for (const CheckEntry& e : rep.entries) {
        os << std::left << std::setw(static_cast<int>(wid) + 2) << e.id
           << std::setw(static_cast<int>(wanchor) + 2) << e.anchor << std::setw(14)
           << std::scientific << std::setprecision(3) << e.residual
           << (e.pass ? "ok" : "FAIL") << "\n";
        os.unsetf(std::ios::scientific);
    }
    os << "overall: " << (rep.pass() ? "PASS" : "FAIL") << "\n";
}

}  // namespace idsym

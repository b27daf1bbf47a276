#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace rdqm {

inline constexpr const char* kToolName = "rdqm";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

/// One verification record. Rationals travel as strings so nothing is lost
/// on the wire; `duration_ms` is the only field allowed to differ between
/// byte-stable runs.
struct CheckRecord {
    std::string id;
    std::string kind;
    std::string family;
    std::string twist;
    nlohmann::json index_sets = nullptr;
    std::string status;  // "pass" | "fail" | "degenerate"
    std::string ratio;
    long skipped_points = 0;
    double duration_ms = 0.0;
    std::string details;
    int criterion = 0;

    bool passed() const { return status == "pass"; }
};

inline nlohmann::json to_json(const CheckRecord& r) {
    return nlohmann::json{{"id", r.id},
                          {"kind", r.kind},
                          {"family", r.family},
                          {"twist", r.twist},
                          {"index_sets", r.index_sets},
                          {"status", r.status},
                          {"ratio", r.ratio},
                          {"skipped_points", r.skipped_points},
                          {"duration_ms", r.duration_ms},
                          {"details", r.details},
                          {"criterion", r.criterion}};
}

struct ReportDocument {
    nlohmann::json config;
    std::vector<CheckRecord> checks;

    long passed() const {
        long n = 0;
        for (const auto& c : checks) n += c.status == "pass";
        return n;
    }
    long failed() const {
        long n = 0;
        for (const auto& c : checks) n += c.status == "fail";
        return n;
    }
    long degenerate() const {
        long n = 0;
        for (const auto& c : checks) n += c.status == "degenerate";
        return n;
    }

    nlohmann::json to_json() const {
        nlohmann::json checks_json = nlohmann::json::array();
        for (const auto& c : checks) checks_json.push_back(rdqm::to_json(c));
        return nlohmann::json{
            {"schema", kReportSchema},
            {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
            {"config", config},
            {"checks", checks_json},
            {"summary",
             {{"passed", passed()}, {"failed", failed()}, {"degenerate", degenerate()}}}};
    }
};

} // namespace rdqm

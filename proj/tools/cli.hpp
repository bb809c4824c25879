#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <qtheta/registry.hpp>

namespace qtheta::cli {

constexpr const char *tool_version = "1.0.0";

struct Discrepancy {
    std::string exponent;
    std::string coefficient;
    friend bool operator==(const Discrepancy &, const Discrepancy &) = default;
};

struct Record {
    std::string id;
    std::string paper_label;
    std::string mode;
    std::string status;
    std::optional<std::int64_t> order_checked;
    std::optional<std::string> residual;
    std::optional<Discrepancy> first_discrepancy;
    double wall_time_ms = 0;
    std::string message;
    friend bool operator==(const Record &, const Record &) = default;
};

struct Report {
    std::string version = tool_version;
    std::vector<Record> entries;
    friend bool operator==(const Report &, const Report &) = default;

    bool all_verified() const;
};

nlohmann::json to_json(const Report &r);
Report report_from_json(const nlohmann::json &j);

struct RunOptions {
    std::optional<std::int64_t> order;
    int precision = 80;
};

/// Checks one registry entry according to its mode.
Record run_entry(const RegistryEntry &e, const RunOptions &opt);

/// Runs entries on `jobs` worker threads; records come back sorted by id.
Report run_entries(const std::vector<RegistryEntry> &entries, const RunOptions &opt, unsigned jobs);

/// Full command line; returns the process exit code (0 pass, 1 failure,
/// 2 usage or domain error).
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace qtheta::cli

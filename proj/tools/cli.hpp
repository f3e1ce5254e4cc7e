#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "cff/special_points.hpp"

namespace cff::cli {

struct RunConfig {
    std::string command;
    std::string q = "2";   // q or p^e
    std::string P;
    int inf_depth = 0;     // 0 picks a size-based default
    int padic_N = 4;
    int guard = 6;
    unsigned threads = 1;
    std::string format = "json";
    std::string out;       // empty: stdout

    std::vector<std::string> suites{"all"};
    int max_deg_f = 3;
    std::uint64_t max_n = 0;   // 0: whole range
    std::string place = "inf";
    int max_m = 5;
    int euler_B = 8;
    std::uint64_t seed = 1;
};

// q text as p^e; throws std::invalid_argument unless q is a prime power.
std::pair<std::uint32_t, int> parse_prime_power(const std::string& q);

nlohmann::ordered_json config_json(const RunConfig& c);
// hex SHA-256 of the canonical config serialization
std::string config_digest(const RunConfig& c);

struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Report {
    RunConfig config;
    std::vector<VerificationReport> suites;
    std::vector<Table> tables;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
    std::vector<std::string> notes;
    double timing_ms = 0;
};

// Throws std::invalid_argument for bad input (unknown suite, invalid P, ...).
Report run(const RunConfig& c);

nlohmann::ordered_json to_json(const Report& r);
void write_json(std::ostream& os, const Report& r);
void write_csv(std::ostream& os, const Report& r);
void write_text(std::ostream& os, const Report& r);

// 0 all pass, 1 some check failed, 3 no failure but something indeterminate
int exit_status(const Report& r);

}  // namespace cff::cli

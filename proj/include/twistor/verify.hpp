#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "twistor/json_io.hpp"

namespace tw {

struct CheckRecord {
    std::string name;
    std::string anchor;
    int samples = 0;
    int failures = 0;
    double worst_residual = 0;
    std::uint64_t seed = 0;
};

struct VerificationReport {
    std::uint64_t seed = 0;
    int samples = 0;
    std::vector<CheckRecord> checks;
    int failures() const;
    bool passed() const { return failures() == 0; }
};

struct CheckInfo {
    std::string_view name;
    std::string_view anchor;
};

// Every named check, in execution order.
std::vector<CheckInfo> registered_checks();

VerificationReport run_suite(std::uint64_t seed, int samples);
// Runs a single registered check (by name) with the seed run_suite would give it.
CheckRecord run_check(std::string_view name, std::uint64_t seed, int samples);

json to_json(const VerificationReport& r);

}  // namespace tw

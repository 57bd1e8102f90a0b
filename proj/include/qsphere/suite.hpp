#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsphere/poly/serialize.hpp"

namespace qsphere {

struct CheckRecord {
    enum class Status { pass, fail, skipped };

    std::string name;
    Status status;
    double elapsed_ms;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed;
    std::vector<CheckRecord> checks;  // declaration order

    std::size_t count(CheckRecord::Status s) const;
    bool ok() const { return count(CheckRecord::Status::fail) == 0; }
};

/// "all", "poly", "suslin", "clutch" or "sphere". Throws InvalidArgument otherwise.
/// Checks run concurrently; each draws from seeded_rng(seed, check name).
SuiteReport run_suite(const std::string& suite, std::uint64_t seed);

std::vector<std::string> suite_names();

const char* to_string(CheckRecord::Status s);

/// Timings are left out unless `timing` is set, so equal seeds give equal bytes.
poly::Json to_json(const SuiteReport& r, bool timing = false);
std::string to_text(const SuiteReport& r);

}  // namespace qsphere

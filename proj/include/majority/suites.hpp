#pragma once

// Named reproduction suites shared by the command-line tool and the acceptance runner.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace majority {

struct CaseResult {
    std::string suite;
    std::string name;
    int criterion = 0;  // acceptance criterion covered, 0 for supplementary cases
    bool pass = false;
    std::string detail;
    std::string repro;     // standalone command reproducing this case
    double seconds = 0.0;  // wall time; kept out of the JSON so reports stay byte-identical
};

struct SuiteOptions {
    std::uint64_t seed = 0;
    int threads = 0;         // 0 reads MAJORITY_THREADS, else hardware concurrency
    std::string only_case;   // run a single case by exact name
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<CaseResult> cases;

    bool pass() const;
    nlohmann::json to_json() const;
    std::string table() const;
};

const std::vector<std::string>& suite_names();

// Throws InvalidInput for unknown suites, or when only_case matches nothing.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options = {});

int default_thread_count();

}  // namespace majority

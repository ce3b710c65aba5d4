#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cohsys {

struct TrialConfig {
    std::uint64_t seed = 1;
    std::uint64_t trials = 100;          // per suite
    std::string suite = "all";
    int max_components = 4;
    long long max_genus = 5;
    long long max_rank = 3;
    long long max_degree = 8;
    long long k_slack = 3;
    std::uint64_t candidate_budget = 10000;  // enumeration ceiling per instance
    std::string counterexample_dir;          // failing inputs are written here when set
};

struct SuiteResult {
    std::string name;
    std::uint64_t trials = 0;
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
    std::uint64_t redraws = 0;  // instances redrawn to fit the budget
    std::vector<std::string> messages;  // first few failure descriptions
    std::vector<std::string> counterexample_files;
    double seconds = 0;
};

struct VerifyReport {
    std::vector<SuiteResult> suites;
    bool ok = true;
    std::uint64_t seed = 0;
};

std::vector<std::string> verify_suite_names();
VerifyReport run_verify(const TrialConfig& cfg);

}  // namespace cohsys

#pragma once
// Registered analytic-vs-Monte-Carlo comparisons. Thresholds are fixed here
// (3 standard errors per bin/site, 1% for chi-square and KS, stated absolute
// tolerances for the exact identities) and never adjusted at run time.
// Checks below their minimum replica count report Inconclusive, not Fail.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "detproc/rng.hpp"

namespace detproc {
namespace verify {

struct VerifyOptions {
    std::uint64_t seed = 20260809;
    long replicas = 0; // 0 = per-check default
    int threads = 1;
};

struct ComparisonReport {
    enum class Status { Pass, Fail, Inconclusive };
    std::string name;
    std::string observable;
    double analytic = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    double max_z = 0.0;
    std::string threshold;
    Status status = Status::Pass;
    std::string details;

    bool failed() const { return status == Status::Fail; }
    const char* status_str() const {
        switch (status) {
            case Status::Pass: return "pass";
            case Status::Fail: return "fail";
            default: return "inconclusive";
        }
    }
};

std::vector<std::string> check_names();

ComparisonReport run_check(const std::string& name, const VerifyOptions& opts);

// Runs the named subset (all registered checks when names is empty is the
// CLI's choice, not this function's: an empty list yields an empty report).
std::vector<ComparisonReport> verify_suite(const std::vector<std::string>& names,
                                           const VerifyOptions& opts);

// Replica harness: runs fn(replica_index, rng) for i in [0, n) on the given
// number of worker threads, each replica on child(seed, i). merge receives
// results strictly in replica order, so parallel == serial bit for bit.
void parallel_replicas(std::uint64_t seed, long n, int threads,
                       const std::function<void(long, Rng&)>& fn);

} // namespace verify
} // namespace detproc

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "effdiff/budget.hpp"

namespace effdiff::suites {

// Seeded generator. Draws use plain modulo so sequences do not depend on the
// standard library's distribution algorithms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : gen_() % n; }
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
    std::int64_t signed_nonzero(std::int64_t k) {
        auto v = static_cast<std::int64_t>(between(1, static_cast<std::uint64_t>(k)));
        return coin() ? v : -v;
    }
    bool coin() { return gen_() & 1U; }
    bool chance(unsigned percent) { return below(100) < percent; }

private:
    std::mt19937_64 gen_;
};

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct Report {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass() const;
};

struct SuiteConfig {
    std::uint64_t seed = 1;
    std::uint64_t budget_bits = 1U << 20;
    std::size_t witness_pool_size = 4096;
    std::uint64_t scan_cap = 4096;
};

const std::vector<std::string>& suite_names();
// DomainError on an unknown suite name.
Report run_suite(const std::string& name, const SuiteConfig& cfg);
// Deterministic text: no timings, no addresses.
std::string format_reports(const std::vector<Report>& reports, const SuiteConfig& cfg);

// Checks sized by the caller; the acceptance tests run them at full size.
CheckResult m_worked_example();
CheckResult fast_growing_benchmark(std::uint64_t max_b);
std::vector<CheckResult> appendix_identities(std::uint64_t seed, std::size_t samples);
CheckResult dickson_streams(std::uint64_t seed, std::size_t count);
CheckResult hilbert_streams(std::uint64_t seed, std::size_t count);
CheckResult planted_membership(std::uint64_t seed, std::size_t count);
CheckResult planted_syzygies(std::uint64_t seed, std::size_t count);
CheckResult random_pseudodivision(std::uint64_t seed, std::size_t count);
CheckResult pseudodivision_fixtures();
CheckResult autoreduce_and_coherent(std::uint64_t seed, std::size_t count);
CheckResult rank_ordinal_coherence(std::uint32_t max_order, std::uint32_t max_degree);
CheckResult knit_instances(std::uint64_t seed, std::size_t count);
CheckResult charset_fixtures(std::size_t witness_pool_size = 4096);

}  // namespace effdiff::suites

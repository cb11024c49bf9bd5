// One line per acceptance criterion, at full size, with the time limit each one carries.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "suites.hpp"

using namespace effdiff::suites;

namespace {

constexpr std::uint64_t kSeed = 7;

struct Outcome {
    bool pass = true;
    std::string detail;
};

Outcome all_of(const std::vector<CheckResult>& checks) {
    Outcome o;
    for (const auto& c : checks) {
        o.pass = o.pass && c.pass;
        if (!o.detail.empty()) o.detail += "; ";
        o.detail += (c.pass ? "" : "FAIL ") + c.name + ": " + c.detail;
    }
    return o;
}

// stdout and exit status of a shell command.
std::pair<std::string, int> capture(const std::string& cmd) {
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    if (!pipe) return {"", -1};
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
    int status = pclose(pipe.release());
    return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

Outcome determinism() {
    std::string cmd = std::string("\"") + EFFDIFF_EXE + "\" verify all --seed 7";
    auto [a, code_a] = capture(cmd);
    auto [b, code_b] = capture(cmd);
    Outcome o;
    o.pass = code_a >= 0 && code_a <= 1 && code_a == code_b && a == b && !a.empty();
    o.detail = std::to_string(a.size()) + " report bytes, exit " + std::to_string(code_a) + ", " +
               (a == b ? "identical" : "different");
    return o;
}

struct Criterion {
    int number;
    const char* name;
    double seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "m worked example", 1, [] { return all_of({m_worked_example()}); }},
        {2, "fast-growing benchmark", 1, [] { return all_of({fast_growing_benchmark(8)}); }},
        {3, "appendix identities", 60,
         [] {
             auto checks = appendix_identities(kSeed, 10000);
             // The concatenated variant is informational; the criterion names the other six.
             std::vector<CheckResult> named;
             Outcome extra;
             for (auto& c : checks) {
                 if (c.name == "appendix_sum_identity_concatenated") extra = all_of({c});
                 else named.push_back(c);
             }
             Outcome o = all_of(named);
             o.detail += "; also " + extra.detail;
             return o;
         }},
        {4, "dickson and hilbert streams", 120,
         [] { return all_of({dickson_streams(kSeed, 500), hilbert_streams(kSeed, 500)}); }},
        {5, "bounded membership completeness", 60, [] { return all_of({planted_membership(kSeed, 200)}); }},
        {6, "syzygy generation", 60, [] { return all_of({planted_syzygies(kSeed, 100)}); }},
        {7, "pseudodivision", 60,
         [] { return all_of({random_pseudodivision(kSeed, 200), pseudodivision_fixtures()}); }},
        {8, "autoreduce and coherent", 120, [] { return all_of({autoreduce_and_coherent(kSeed, 50)}); }},
        {9, "rank-ordinal coherence", 60, [] { return all_of({rank_ordinal_coherence(3, 3)}); }},
        {10, "knitting combinator", 10, [] { return all_of({knit_instances(kSeed, 100)}); }},
        {11, "char_set fixtures", 10, [] { return all_of({charset_fixtures(4096)}); }},
        {12, "determinism", 600, determinism},
    };

    std::size_t failed = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o = c.run();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = secs < c.seconds;
        bool pass = o.pass && in_time;
        failed += !pass;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (pass ? "PASS" : "FAIL") << " criterion " << c.number << " (" << c.name << "): " << o.detail << " ["
             << secs << " s, limit " << c.seconds << " s" << (in_time ? "" : ", over") << "]";
        std::cout << line.str() << std::endl;
    }
    std::cout << (criteria.size() - failed) << " of " << criteria.size() << " criteria pass" << std::endl;
    return failed == 0 ? 0 : 1;
}

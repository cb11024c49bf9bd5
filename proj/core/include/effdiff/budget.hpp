#pragma once

#include <cstdint>

#include "effdiff/ordinal.hpp"

namespace effdiff {

// Evaluation limits: a bit cap per intermediate value and a cap on loop steps.
struct Budget {
    std::uint64_t max_bits = 1U << 20;
    std::uint64_t max_steps = 1U << 22;
    std::uint64_t steps = 0;

    // Charges k steps; false once the step cap is passed.
    bool spend(std::uint64_t k = 1);
    // 2^max_bits, the clamp used for certified lower bounds.
    BigNat ceiling() const;
};

// An exact value, or (exact == false) a certified lower bound for it.
struct Val {
    BigNat v;
    bool exact = true;

    Val() = default;
    Val(BigNat x, bool e = true) : v(std::move(x)), exact(e) {}  // NOLINT
    Val(unsigned long x) : v(x) {}                                // NOLINT
};

// Arithmetic on Val. Every operation is monotone in its arguments, so lower bounds
// propagate; any result whose size passes the bit cap is replaced by the cap as a
// lower bound.
namespace arith {
Val clamp(Val x, const Budget& b);
Val add(const Val& a, const Val& b, const Budget& bud);
Val mul(const Val& a, const Val& b, const Budget& bud);
Val pow(const Val& a, const Val& e, const Budget& bud);
// 2^e - 1
Val pow2_minus_one(const Val& e, const Budget& bud);
Val max(const Val& a, const Val& b);
// binomial(a + b, b), monotone in both arguments.
Val choose_sum(const Val& a, const Val& b, const Budget& bud);
// binomial(n, k); only n may be a lower bound for the result to stay certified.
Val choose(const Val& n, const Val& k, const Budget& bud);
// Small control value for loops. Lower bounds pass through as their value.
std::uint64_t small(const Val& x, const char* what);
}  // namespace arith

}  // namespace effdiff

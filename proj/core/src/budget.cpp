#include "effdiff/budget.hpp"

#include <string>

#include "effdiff/errors.hpp"

namespace effdiff {

bool Budget::spend(std::uint64_t k) {
    steps += k;
    return steps <= max_steps;
}

BigNat Budget::ceiling() const {
    BigNat r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, max_bits);
    return r;
}

namespace arith {

namespace {

std::uint64_t bits(const BigNat& x) { return x == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2); }

Val capped(const Budget& b) { return Val(b.ceiling(), false); }

}  // namespace

Val clamp(Val x, const Budget& b) {
    if (bits(x.v) > b.max_bits) return capped(b);
    return x;
}

Val add(const Val& a, const Val& b, const Budget& bud) {
    return clamp(Val(a.v + b.v, a.exact && b.exact), bud);
}

Val mul(const Val& a, const Val& b, const Budget& bud) {
    return clamp(Val(a.v * b.v, a.exact && b.exact), bud);
}

Val pow(const Val& a, const Val& e, const Budget& bud) {
    bool exact = a.exact && e.exact;
    if (a.v == 1) return Val(1, a.exact);
    if (a.v == 0) {
        if (exact) return Val(e.v == 0 ? 1 : 0, true);
        return Val(0, false);
    }
    std::uint64_t base_floor = bits(a.v) - 1;  // a >= 2^base_floor
    if (e.v > bud.max_bits) return capped(bud);
    unsigned long ex = e.v.get_ui();
    if (base_floor > 0 && base_floor * ex >= bud.max_bits) return capped(bud);
    if (bits(a.v) * ex > 4 * bud.max_bits + 64) return capped(bud);
    BigNat r;
    mpz_pow_ui(r.get_mpz_t(), a.v.get_mpz_t(), ex);
    return clamp(Val(r, exact), bud);
}

Val pow2_minus_one(const Val& e, const Budget& bud) {
    if (e.v >= bud.max_bits) return capped(bud);
    BigNat r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e.v.get_ui());
    return Val(r - 1, e.exact);
}

Val max(const Val& a, const Val& b) {
    bool exact = a.exact && b.exact;
    return Val(a.v >= b.v ? a.v : b.v, exact);
}

Val choose_sum(const Val& a, const Val& b, const Budget& bud) {
    bool exact = a.exact && b.exact;
    const BigNat& k = a.v < b.v ? a.v : b.v;
    BigNat total = a.v + b.v;
    if (k == 0) return Val(1, exact);
    // binomial(a+b, k) >= 2^k and >= ((a+b)/k)^k
    if (k >= bud.max_bits) return capped(bud);
    unsigned long kk = k.get_ui();
    BigNat q = total / k;
    if ((bits(q) - 1) * kk >= bud.max_bits) return capped(bud);
    BigNat r;
    mpz_bin_ui(r.get_mpz_t(), total.get_mpz_t(), kk);
    return clamp(Val(r, exact), bud);
}

Val choose(const Val& n, const Val& k, const Budget& bud) {
    if (!k.exact) return Val(0, false);
    if (k.v > n.v) return Val(0, n.exact);
    return choose_sum(Val(n.v - k.v, n.exact), k, bud);
}

std::uint64_t small(const Val& x, const char* what) {
    if (!x.v.fits_ulong_p()) throw DomainError(std::string(what) + " is too large to drive a loop");
    return x.v.get_ui();
}

}  // namespace arith
}  // namespace effdiff

#include "plsforge/rat.hpp"

#include "plsforge/errors.hpp"

namespace plsforge {

Rat ratio(const Int& num, const Int& den) {
    if (den == 0) throw InvalidArgument("ratio: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat pow2(long e) {
    Rat r(1);
    if (e >= 0)
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e));
    else
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e));
    return r;
}

Int pow2_int(unsigned long e) {
    Int v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, e);
    return v;
}

Rat pow_rat(const Rat& base, long e) {
    bool invert = e < 0;
    unsigned long k = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    if (invert && base == 0) throw InvalidArgument("pow_rat: 0 to a negative power");
    Int num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), k);
    return invert ? ratio(den, num) : ratio(num, den);
}

long floor_log(const Rat& base, const Rat& x) {
    if (base <= 1) throw InvalidArgument("floor_log: base must exceed 1");
    if (x <= 0) throw InvalidArgument("floor_log: argument must be positive");
    // Find bracketing exponents by doubling, then binary search. All probes exact.
    long lo, hi;
    if (x >= 1) {
        lo = 0;
        hi = 1;
        while (pow_rat(base, hi) <= x) {
            lo = hi;
            hi *= 2;
        }
        // base^lo <= x < base^hi
    } else {
        hi = 0;
        lo = -1;
        while (pow_rat(base, lo) > x) {
            hi = lo;
            lo *= 2;
        }
    }
    while (hi - lo > 1) {
        long mid = lo + (hi - lo) / 2;
        if (pow_rat(base, mid) <= x)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

Int ceil_div(const Int& a, const Int& b) {
    if (b <= 0) throw InvalidArgument("ceil_div: divisor must be positive");
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int ceil_rat(const Rat& x) {
    return ceil_div(x.get_num(), x.get_den());
}

bool is_integer(const Rat& x) {
    return x.get_den() == 1;
}

std::string rat_to_string(const Rat& x) {
    if (is_integer(x)) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

} // namespace plsforge

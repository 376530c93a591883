#ifndef SYMFI_RAT_HPP
#define SYMFI_RAT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace symfi {

// Exact arbitrary-precision rational. mpq_class keeps values canonical:
// gcd(|num|, den) = 1, den > 0, zero is 0/1.
using Rat = mpq_class;
using Int = mpz_class;

inline bool is_zero(const Rat &a) { return sgn(a) == 0; }
inline bool is_one(const Rat &a) { return a == 1; }
inline bool is_integer(const Rat &a) { return a.get_den() == 1; }

inline Rat rat_of(long n) { return Rat(n); }
inline Rat rat_of(long n, long d) { Rat r(n, d); r.canonicalize(); return r; }

// Serialized as "n" or "n/d", always in lowest terms.
std::string rat_to_string(const Rat &a);
Rat rat_from_string(const std::string &s);

// Deterministic splitmix64 stream; used everywhere randomness is needed so
// results are reproducible across platforms and standard libraries.
struct Prng {
    std::uint64_t state;
    explicit Prng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [lo, hi]
    long uniform(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

} // namespace symfi

#endif

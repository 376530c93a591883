#ifndef SYMFI_MODULAR_HPP
#define SYMFI_MODULAR_HPP

#include "symfi/rat.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace symfi {

// Word-sized prime field arithmetic. Primes are < 2^62 so products fit in
// unsigned 128-bit intermediates.
struct Zp {
    std::uint64_t p;

    explicit Zp(std::uint64_t prime) : p(prime) {}

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        if (s >= p) s -= p;
        return s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        return a >= b ? a - b : a + (p - b);
    }
    std::uint64_t neg(std::uint64_t a) const { return a ? p - a : 0; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1u) r = mul(r, a);
            a = mul(a, a);
            e >>= 1u;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const; // a != 0
};

// thrown internally when a prime cannot be used (zero divisor, denominator
// divisible by p); callers move on to the next prime
struct bad_prime {};

// reduce a rational mod p; throws bad_prime if the denominator vanishes
std::uint64_t mod_p(const Rat &a, const Zp &f);

// the fixed deterministic sequence of 62-bit primes used by all solvers
std::uint64_t nth_prime(std::size_t idx);

// incremental Gaussian elimination over Zp that processes columns in the
// given order and reports, per column, either the pivot row or the expansion
// of the column over earlier pivot columns (a kernel element).
class ZpEliminator {
  public:
    explicit ZpEliminator(const Zp &f, std::size_t rows) : f_(f), rows_(rows) {}

    // returns the kernel combination over previously pushed columns (with
    // trailing coefficient 1 for this column) if dependent, nullopt if the
    // column became a new pivot
    std::optional<std::vector<std::uint64_t>> push_column(std::vector<std::uint64_t> col);

    std::size_t rank() const { return pivots_.size(); }

  private:
    Zp f_;
    std::size_t rows_;
    struct Pivot {
        std::vector<std::uint64_t> col;   // reduced column
        std::size_t row;                  // pivot row index
        std::vector<std::uint64_t> combo; // expansion over original columns
    };
    std::vector<Pivot> pivots_;
    std::size_t pushed_ = 0;
};

// chinese remainders: value mod (m1*m2) from residues mod m1 (big) and p (word)
Int crt_pair(const Int &r1, const Int &m1, std::uint64_t r2, std::uint64_t p);

// balanced rational reconstruction of a mod m with |num|, den <= sqrt(m/2);
// returns nullopt when no such fraction exists
std::optional<Rat> rational_reconstruct(const Int &a, const Int &m);

} // namespace symfi

#endif

#include "symfi/modular.hpp"

#include "symfi/errors.hpp"

#include <mutex>

namespace symfi {

std::uint64_t Zp::inv(std::uint64_t a) const {
    if (a == 0) throw bad_prime{};
    return pow(a, p - 2);
}

std::uint64_t mod_p(const Rat &a, const Zp &f) {
    Int pz(static_cast<unsigned long>(f.p));
    Int dn = a.get_den() % pz;
    if (dn == 0) throw bad_prime{};
    Int nm = a.get_num() % pz;
    if (nm < 0) nm += pz;
    std::uint64_t n = mpz_get_ui(nm.get_mpz_t());
    std::uint64_t d = mpz_get_ui(dn.get_mpz_t());
    return f.mul(n, f.inv(d));
}

namespace {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1u) == 0) {
        d >>= 1u;
        ++s;
    }
    auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e) {
        std::uint64_t r = 1;
        a %= n;
        while (e) {
            if (e & 1u) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1u;
        }
        return r;
    };
    // deterministic witness set for 64-bit integers
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint64_t> g_primes;
std::mutex g_primes_mutex;

} // namespace

std::uint64_t nth_prime(std::size_t idx) {
    std::lock_guard<std::mutex> lock(g_primes_mutex);
    while (g_primes.size() <= idx) {
        std::uint64_t candidate = g_primes.empty() ? ((1ull << 62) - 1) : g_primes.back() - 2;
        while (!is_prime_u64(candidate)) candidate -= 2;
        g_primes.push_back(candidate);
    }
    return g_primes[idx];
}

std::optional<std::vector<std::uint64_t>> ZpEliminator::push_column(std::vector<std::uint64_t> col) {
    std::vector<std::uint64_t> combo(pushed_ + 1, 0);
    combo[pushed_] = 1;
    for (const Pivot &pv : pivots_) {
        std::uint64_t c = col[pv.row];
        if (c == 0) continue;
        std::uint64_t factor = f_.mul(c, f_.inv(pv.col[pv.row]));
        for (std::size_t i = 0; i < rows_; ++i)
            col[i] = f_.sub(col[i], f_.mul(factor, pv.col[i]));
        for (std::size_t i = 0; i < pv.combo.size(); ++i)
            combo[i] = f_.sub(combo[i], f_.mul(factor, pv.combo[i]));
    }
    std::size_t row = rows_;
    for (std::size_t i = 0; i < rows_; ++i)
        if (col[i] != 0) {
            row = i;
            break;
        }
    ++pushed_;
    if (row == rows_) return combo; // dependent: kernel element over earlier columns
    pivots_.push_back(Pivot{std::move(col), row, std::move(combo)});
    return std::nullopt;
}

Int crt_pair(const Int &r1, const Int &m1, std::uint64_t r2, std::uint64_t p) {
    // x = r1 + m1 * ((r2 - r1) * m1^{-1} mod p)
    Zp f(p);
    Int pz(static_cast<unsigned long>(p));
    Int m1p = m1 % pz;
    if (m1p < 0) m1p += pz;
    Int r1p = r1 % pz;
    if (r1p < 0) r1p += pz;
    std::uint64_t m1u = mpz_get_ui(m1p.get_mpz_t());
    std::uint64_t r1u = mpz_get_ui(r1p.get_mpz_t());
    std::uint64_t t = f.mul(f.sub(r2 % p, r1u), f.inv(m1u));
    return r1 + m1 * Int(static_cast<unsigned long>(t));
}

std::optional<Rat> rational_reconstruct(const Int &a, const Int &m) {
    // half-extended Euclid, stopping when the remainder drops below sqrt(m/2)
    Int bound;
    mpz_sqrt(bound.get_mpz_t(), Int(m / 2).get_mpz_t());
    Int r0 = m, r1 = a % m;
    if (r1 < 0) r1 += m;
    Int t0 = 0, t1 = 1;
    while (r1 > bound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    Int num = r1, den = t1;
    if (den < 0) {
        den = -den;
        num = -num;
    }
    if (den > bound || den == 0) return std::nullopt;
    Int g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1) return std::nullopt;
    Rat out(num, den);
    out.canonicalize();
    return out;
}

} // namespace symfi

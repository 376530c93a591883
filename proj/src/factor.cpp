#include "symfi/factor.hpp"

#include "symfi/errors.hpp"
#include "symfi/modular.hpp"
#include "symfi/vector_field.hpp"

#include <algorithm>
#include <map>

namespace symfi {

namespace {

// ---------- integer polynomials ----------

using ZPoly = std::vector<Int>; // dense, trailing (top) entry nonzero

void znormalize(ZPoly &a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int zdeg(const ZPoly &a) { return static_cast<int>(a.size()) - 1; }

Int zcontent(const ZPoly &a) {
    Int g(0);
    for (const auto &c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

ZPoly zmul(const ZPoly &a, const ZPoly &b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// exact division test in Z[x] for a monic divisor
bool zdivide_monic(const ZPoly &a, const ZPoly &b, ZPoly &quo) {
    if (b.empty() || b.back() != 1) throw error("zdivide_monic: divisor not monic");
    ZPoly r = a;
    int db = zdeg(b);
    quo.assign(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, Int(0));
    for (int k = zdeg(r); k >= db; --k) {
        Int f = r[static_cast<std::size_t>(k)];
        if (f == 0) continue;
        quo[static_cast<std::size_t>(k - db)] = f;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b[static_cast<std::size_t>(j)];
    }
    znormalize(r);
    return r.empty();
}

QPoly zpoly_to_q(const ZPoly &a) {
    std::vector<Rat> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = Rat(a[i]);
    return QPoly(std::move(c));
}

// primitive integer image of a rational polynomial; records the pulled-out unit
ZPoly qpoly_to_primitive_z(const QPoly &p, Rat &unit) {
    Int den_lcm(1);
    for (const auto &c : p.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    ZPoly z(p.coeffs().size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        Rat scaled = p.coeffs()[i] * Rat(den_lcm);
        z[i] = scaled.get_num();
    }
    Int cont = zcontent(z);
    if (cont == 0) {
        unit = Rat(0);
        return {};
    }
    if (z.back() < 0) cont = -cont;
    for (auto &c : z) c /= cont;
    unit = Rat(cont, den_lcm);
    unit.canonicalize();
    return z;
}

// ---------- arithmetic mod a word prime ----------

using PPoly = std::vector<std::uint64_t>;

void pnormalize(PPoly &a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PPoly pmul(const Zp &f, const PPoly &a, const PPoly &b) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    return r;
}

void pdivrem(const Zp &f, PPoly a, const PPoly &b, PPoly &q, PPoly &r) {
    int db = static_cast<int>(b.size()) - 1;
    std::uint64_t binv = f.inv(b.back());
    q.assign(static_cast<int>(a.size()) - 1 >= db ? a.size() - b.size() + 1 : 0, 0);
    for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
        std::uint64_t c = f.mul(a[static_cast<std::size_t>(k)], binv);
        if (c == 0) continue;
        q[static_cast<std::size_t>(k - db)] = c;
        for (int j = 0; j <= db; ++j)
            a[static_cast<std::size_t>(k - db + j)] = f.sub(a[static_cast<std::size_t>(k - db + j)], f.mul(c, b[static_cast<std::size_t>(j)]));
    }
    pnormalize(a);
    r = std::move(a);
}

PPoly pmod(const Zp &f, const PPoly &a, const PPoly &b) {
    PPoly q, r;
    if (static_cast<int>(a.size()) < static_cast<int>(b.size())) return a;
    pdivrem(f, a, b, q, r);
    return r;
}

PPoly pgcd(const Zp &f, PPoly a, PPoly b) {
    pnormalize(a);
    pnormalize(b);
    while (!b.empty()) {
        PPoly r = pmod(f, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        std::uint64_t inv = f.inv(a.back());
        for (auto &c : a) c = f.mul(c, inv);
    }
    return a;
}

PPoly pderiv(const Zp &f, const PPoly &a) {
    PPoly r;
    if (a.size() <= 1) return r;
    r.resize(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = f.mul(a[i], i % f.p);
    pnormalize(r);
    return r;
}

PPoly ppowmod(const Zp &f, PPoly base, Int e, const PPoly &m) {
    PPoly r{1};
    base = pmod(f, base, m);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = pmod(f, pmul(f, r, base), m);
        base = pmod(f, pmul(f, base, base), m);
        e >>= 1;
    }
    return r;
}

// distinct-degree then Cantor-Zassenhaus equal-degree splitting; input monic
// squarefree mod p, p odd
std::vector<PPoly> pfactor_squarefree(const Zp &f, const PPoly &poly, Prng &rng) {
    std::vector<PPoly> out;
    std::vector<std::pair<PPoly, int>> stages; // (product of factors, degree d)
    PPoly rest = poly;
    PPoly xq{0, 1};
    Int q(static_cast<unsigned long>(f.p));
    PPoly h = xq; // x^(p^i) mod rest, updated as i grows
    for (int d = 1; 2 * d <= static_cast<int>(rest.size()) - 1; ++d) {
        h = ppowmod(f, h, q, rest);
        PPoly diff = h;
        // diff = h - x
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = f.sub(diff[1], 1);
        pnormalize(diff);
        PPoly g = pgcd(f, rest, diff);
        if (static_cast<int>(g.size()) - 1 > 0) {
            stages.push_back({g, d});
            PPoly qq, rr;
            pdivrem(f, rest, g, qq, rr);
            rest = qq;
            h = pmod(f, h, rest);
        }
    }
    if (static_cast<int>(rest.size()) - 1 > 0) stages.push_back({rest, static_cast<int>(rest.size()) - 1});

    for (auto &[prod, d] : stages) {
        std::vector<PPoly> work{prod};
        while (!work.empty()) {
            PPoly cur = work.back();
            work.pop_back();
            int n = static_cast<int>(cur.size()) - 1;
            if (n == d) {
                out.push_back(cur);
                continue;
            }
            // random splitting: gcd(cur, rand^((p^d-1)/2) - 1)
            for (;;) {
                PPoly a(static_cast<std::size_t>(n), 0);
                for (auto &c : a) c = rng.next() % f.p;
                pnormalize(a);
                if (a.empty()) continue;
                Int e = 1;
                for (int i = 0; i < d; ++i) e *= q;
                e = (e - 1) / 2;
                PPoly b = ppowmod(f, a, e, cur);
                if (b.empty()) continue;
                b[0] = f.sub(b[0], 1);
                pnormalize(b);
                PPoly g = pgcd(f, cur, b);
                int dg = static_cast<int>(g.size()) - 1;
                if (dg > 0 && dg < n) {
                    PPoly qq, rr;
                    pdivrem(f, cur, g, qq, rr);
                    work.push_back(g);
                    work.push_back(qq);
                    break;
                }
            }
        }
    }
    return out;
}

// ---------- Hensel lifting over Z/p^k ----------

ZPoly zmod_sym(const ZPoly &a, const Int &m) {
    ZPoly r = a;
    Int half = m / 2;
    for (auto &c : r) {
        c %= m;
        if (c < 0) c += m;
        if (c > half) c -= m;
    }
    znormalize(r);
    return r;
}

ZPoly zmul_mod(const ZPoly &a, const ZPoly &b, const Int &m) {
    ZPoly r = zmul(a, b);
    for (auto &c : r) {
        c %= m;
        if (c < 0) c += m;
    }
    znormalize(r);
    return r;
}

// divrem by a monic divisor with coefficients reduced mod m
void zdivrem_monic_mod(const ZPoly &a, const ZPoly &b, const Int &m, ZPoly &q, ZPoly &r) {
    r = a;
    for (auto &c : r) {
        c %= m;
        if (c < 0) c += m;
    }
    int db = zdeg(b);
    q.assign(zdeg(r) >= db ? static_cast<std::size_t>(zdeg(r) - db) + 1 : 0, Int(0));
    for (int k = zdeg(r); k >= db; --k) {
        Int f = r[static_cast<std::size_t>(k)] % m;
        if (f == 0) continue;
        q[static_cast<std::size_t>(k - db)] = f;
        for (int j = 0; j <= db; ++j) {
            Int &slot = r[static_cast<std::size_t>(k - db + j)];
            slot = (slot - f * b[static_cast<std::size_t>(j)]) % m;
            if (slot < 0) slot += m;
        }
    }
    znormalize(r);
}

// One quadratic Hensel step: from f = g h (mod m), s g + t h = 1 (mod m)
// to the same congruences mod m^2. f, g, h monic.
void hensel_step(const ZPoly &f, ZPoly &g, ZPoly &h, ZPoly &s, ZPoly &t, const Int &m) {
    Int m2 = m * m;
    auto reduce = [&](ZPoly a) {
        for (auto &c : a) {
            c %= m2;
            if (c < 0) c += m2;
        }
        znormalize(a);
        return a;
    };
    auto add = [&](const ZPoly &a, const ZPoly &b) {
        ZPoly r = a;
        r.resize(std::max(a.size(), b.size()), Int(0));
        for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
        return reduce(std::move(r));
    };
    auto sub = [&](const ZPoly &a, const ZPoly &b) {
        ZPoly r = a;
        r.resize(std::max(a.size(), b.size()), Int(0));
        for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
        return reduce(std::move(r));
    };

    ZPoly e = sub(f, zmul(g, h));
    ZPoly q, r;
    zdivrem_monic_mod(zmul_mod(s, e, m2), h, m2, q, r); // s e = q h + r
    ZPoly gstar = add(add(g, zmul_mod(t, e, m2)), zmul_mod(q, g, m2));
    ZPoly hstar = add(h, r);

    ZPoly one{Int(1)};
    ZPoly b = sub(add(zmul(s, gstar), zmul(t, hstar)), one);
    ZPoly c, d;
    zdivrem_monic_mod(zmul_mod(s, b, m2), hstar, m2, c, d); // s b = c h* + d
    ZPoly sstar = sub(s, d);
    ZPoly tstar = sub(sub(t, zmul_mod(t, b, m2)), zmul_mod(c, gstar, m2));

    g = std::move(gstar);
    h = std::move(hstar);
    s = std::move(sstar);
    t = std::move(tstar);
}

// extended gcd over Zp for the initial Bezout pair
void pbezout(const Zp &f, const PPoly &g, const PPoly &h, PPoly &s, PPoly &t) {
    // invariants: r0 = s0*g + t0*h, r1 = s1*g + t1*h
    PPoly r0 = g, r1 = h, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        PPoly q, r;
        pdivrem(f, r0, r1, q, r);
        auto comb = [&](const PPoly &a0, const PPoly &a1) {
            PPoly qa = pmul(f, q, a1);
            PPoly res = a0;
            if (res.size() < qa.size()) res.resize(qa.size(), 0);
            for (std::size_t i = 0; i < qa.size(); ++i) res[i] = f.sub(res[i], qa[i]);
            pnormalize(res);
            return res;
        };
        PPoly s2 = comb(s0, s1), t2 = comb(t0, t1);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.size() != 1) throw error("pbezout: inputs are not coprime");
    std::uint64_t inv = f.inv(r0[0]);
    for (auto &c : s0) c = f.mul(c, inv);
    for (auto &c : t0) c = f.mul(c, inv);
    s = std::move(s0);
    t = std::move(t0);
}

ZPoly ppoly_to_z(const PPoly &a) {
    ZPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = Int(static_cast<unsigned long>(a[i]));
    return r;
}

// lift the monic modular factorization fac of monic f to mod p^(2^levels)
std::vector<ZPoly> hensel_lift_tree(const ZPoly &f, std::vector<PPoly> fac, const Zp &zp,
                                    const Int &target, Int &modulus_out) {
    if (fac.size() == 1) {
        modulus_out = Int(static_cast<unsigned long>(zp.p));
        return {f};
    }
    // split into two halves and lift the pair, then recurse
    std::size_t half = fac.size() / 2;
    PPoly gp{1}, hp{1};
    for (std::size_t i = 0; i < half; ++i) gp = pmul(zp, gp, fac[i]);
    for (std::size_t i = half; i < fac.size(); ++i) hp = pmul(zp, hp, fac[i]);
    PPoly sp, tp;
    pbezout(zp, gp, hp, sp, tp);

    ZPoly g = ppoly_to_z(gp), h = ppoly_to_z(hp), s = ppoly_to_z(sp), t = ppoly_to_z(tp);
    Int m(static_cast<unsigned long>(zp.p));
    while (m < target) {
        hensel_step(f, g, h, s, t, m);
        m = m * m;
    }
    // recurse on both halves
    std::vector<PPoly> lf(fac.begin(), fac.begin() + static_cast<long>(half));
    std::vector<PPoly> rf(fac.begin() + static_cast<long>(half), fac.end());
    Int msub;
    auto left = hensel_lift_tree(g, std::move(lf), zp, target, msub);
    auto right = hensel_lift_tree(h, std::move(rf), zp, target, msub);
    modulus_out = m;
    left.insert(left.end(), right.begin(), right.end());
    return left;
}

// Mignotte-style bound on factor coefficients of a monic integer polynomial
Int factor_bound(const ZPoly &f) {
    Int norm2(0);
    for (const auto &c : f) norm2 += c * c;
    Int s;
    mpz_sqrt(s.get_mpz_t(), norm2.get_mpz_t());
    s += 1;
    Int b = s;
    int n = zdeg(f);
    mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<mp_bitcnt_t>(n + 1));
    return b;
}

// factor a monic squarefree integer polynomial into monic irreducibles
std::vector<ZPoly> factor_monic_squarefree_z(const ZPoly &f) {
    int n = zdeg(f);
    if (n <= 1) return {f};

    // choose a prime keeping f squarefree
    std::uint64_t p = 0;
    Prng prng(0x5eedf00dULL ^ static_cast<std::uint64_t>(n));
    for (std::uint64_t cand = 101;; cand += 2) {
        // small deterministic search over odd numbers
        bool isp = true;
        for (std::uint64_t d = 3; d * d <= cand; d += 2)
            if (cand % d == 0) {
                isp = false;
                break;
            }
        if (!isp) continue;
        Zp zp(cand);
        PPoly fp(f.size());
        bool ok = true;
        for (std::size_t i = 0; i < f.size(); ++i) {
            Int c = f[i] % Int(static_cast<unsigned long>(cand));
            if (c < 0) c += Int(static_cast<unsigned long>(cand));
            fp[i] = mpz_get_ui(c.get_mpz_t());
        }
        if (fp.back() == 0) ok = false; // cannot happen for monic f, kept for safety
        if (ok) {
            PPoly g = pgcd(zp, fp, pderiv(zp, fp));
            ok = g.size() == 1;
        }
        if (ok) {
            p = cand;
            break;
        }
    }

    Zp zp(p);
    PPoly fp(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        Int c = f[i] % Int(static_cast<unsigned long>(p));
        if (c < 0) c += Int(static_cast<unsigned long>(p));
        fp[i] = mpz_get_ui(c.get_mpz_t());
    }
    std::vector<PPoly> modular = pfactor_squarefree(zp, fp, prng);
    if (modular.size() == 1) return {f};

    Int target = factor_bound(f) * 2 + 1;
    Int modulus;
    std::vector<ZPoly> lifted = hensel_lift_tree(f, modular, zp, target, modulus);

    // subset recombination with symmetric representatives
    std::vector<ZPoly> result;
    ZPoly rest = f;
    std::vector<ZPoly> pool = lifted;
    std::size_t card = 1;
    while (2 * card <= pool.size()) {
        bool found_any = false;
        std::vector<std::size_t> idx(card);
        for (std::size_t i = 0; i < card; ++i) idx[i] = i;
        for (;;) {
            ZPoly cand{Int(1)};
            for (std::size_t i : idx) cand = zmul_mod(cand, pool[i], modulus);
            cand = zmod_sym(cand, modulus);
            ZPoly quo;
            if (zdivide_monic(rest, cand, quo)) {
                result.push_back(cand);
                rest = quo;
                std::vector<ZPoly> np;
                for (std::size_t i = 0, j = 0; i < pool.size(); ++i) {
                    if (j < idx.size() && idx[j] == i) {
                        ++j;
                        continue;
                    }
                    np.push_back(pool[i]);
                }
                pool = std::move(np);
                found_any = true;
                break;
            }
            // next combination
            long pos = static_cast<long>(card) - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == pool.size() - card + static_cast<std::size_t>(pos)) --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < card; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!found_any) ++card;
    }
    if (zdeg(rest) > 0) result.push_back(rest);
    return result;
}

// ---------- univariate over Q ----------

std::vector<std::pair<QPoly, int>> squarefree_decompose_q(const QPoly &p) {
    // Yun's algorithm
    std::vector<std::pair<QPoly, int>> out;
    QPoly f = p;
    QPoly g = qpoly_gcd(f, f.derivative());
    QPoly w = qpoly_divexact(f, g);
    int i = 1;
    while (w.degree() > 0) {
        QPoly y = qpoly_gcd(w, g);
        QPoly fac = qpoly_divexact(w, y);
        if (fac.degree() > 0) out.push_back({fac, i});
        g = qpoly_divexact(g, y);
        w = y;
        ++i;
    }
    return out;
}

std::vector<QPoly> factor_squarefree_q(const QPoly &p) {
    // monicize: F(x) = l^{n-1} p(x/l) over the primitive integer image
    Rat unit;
    ZPoly z = qpoly_to_primitive_z(p, unit);
    int n = zdeg(z);
    if (n <= 0) return {};
    if (n == 1) return {zpoly_to_q(z)};
    Int l = z.back();
    // F(x) = l^{ n-1} p(x/l): coefficient of x^i is z_i l^{n-1-i}, top slot 1
    ZPoly monic(z.size());
    monic[static_cast<std::size_t>(n)] = 1;
    Int pw(1);
    for (int i = n - 1; i >= 0; --i) {
        monic[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)] * pw;
        pw *= l;
    }
    auto monic_factors = factor_monic_squarefree_z(monic);
    std::vector<QPoly> out;
    for (const auto &mf : monic_factors) {
        // map back h(x) -> primitive(h(l x))
        QPoly h = zpoly_to_q(mf);
        std::vector<Rat> c(h.coeffs());
        Rat pwl(1);
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] *= pwl;
            pwl *= Rat(l);
        }
        Rat u2;
        ZPoly prim = qpoly_to_primitive_z(QPoly(std::move(c)), u2);
        out.push_back(zpoly_to_q(prim));
    }
    return out;
}

// deterministic display order for factors
bool factor_less(const BiPoly &a, const BiPoly &b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.term_count() != b.term_count()) return a.term_count() < b.term_count();
    return a.to_string() < b.to_string();
}

BiPoly qpoly_as_bipoly(const QPoly &p, bool in_x) {
    BiPoly r;
    for (int i = 0; i <= p.degree(); ++i) {
        if (in_x)
            r.set_coeff(i, 0, p.coeff(i));
        else
            r.set_coeff(0, i, p.coeff(i));
    }
    return r;
}

// ---------- bivariate ----------

QPoly bipoly_content_x(const BiPoly &p) {
    QPoly g;
    for (const auto &c : p.to_x_coeffs()) g = qpoly_gcd(g, c);
    return g;
}

BiPoly divide_by_ycontent(const BiPoly &p, const QPoly &cont) {
    auto cs = p.to_x_coeffs();
    std::vector<QPoly> out(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i)
        out[i] = cs[i].is_zero() ? cs[i] : qpoly_divexact(cs[i], cont);
    return BiPoly::from_x_coeffs(out);
}

// F(x,y) = L^{m-1} s(x/L, y), monic in x: x^m + sum_{i<m} c_i L^{m-1-i} x^i
BiPoly monicize_x(const BiPoly &s, const QPoly &L, int m) {
    auto cs = s.to_x_coeffs();
    BiPoly out = BiPoly::monomial(Rat(1), m, 0);
    BiPoly lcb = qpoly_as_bipoly(L, false);
    for (int i = 0; i < m; ++i) {
        if (static_cast<std::size_t>(i) >= cs.size() || cs[static_cast<std::size_t>(i)].is_zero()) continue;
        BiPoly ci = qpoly_as_bipoly(cs[static_cast<std::size_t>(i)], false);
        out = out + ci * bipoly_pow(lcb, static_cast<unsigned>(m - 1 - i)) * BiPoly::monomial(Rat(1), i, 0);
    }
    return out;
}

// multifactor linear Hensel lift in z: F monic in x, F(x,z) = prod g_i mod z^order
std::vector<BiPoly> bivariate_hensel(const BiPoly &F, const std::vector<QPoly> &u, int order) {
    std::size_t s = u.size();
    // Bezout inverses: inv_i = (prod_{j!=i} u_j)^{-1} mod u_i, over Q[x]
    std::vector<QPoly> inv(s);
    for (std::size_t i = 0; i < s; ++i) {
        QPoly prod(Rat(1));
        for (std::size_t j = 0; j < s; ++j)
            if (j != i) {
                QPoly q, r;
                qpoly_divrem(prod * u[j], u[i], q, r);
                prod = r;
            }
        // extended Euclid for prod^{-1} mod u_i
        QPoly r0 = u[i], r1 = prod, t0, t1(Rat(1));
        while (!r1.is_zero() && r1.degree() > 0) {
            QPoly q, r;
            qpoly_divrem(r0, r1, q, r);
            QPoly t2 = t0 - q * t1;
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t2;
        }
        if (r1.is_zero()) throw error("bivariate_hensel: images not coprime");
        inv[i] = t1 * (Rat(1) / r1.coeff(0));
        QPoly q, r;
        qpoly_divrem(inv[i], u[i], q, r);
        inv[i] = r;
    }

    // factors as vectors of y-slices: g_i = sum_k slice_{i,k}(x) z^k
    std::vector<std::vector<QPoly>> g(s);
    for (std::size_t i = 0; i < s; ++i) g[i] = {u[i]};

    auto slice_of = [&](const BiPoly &pz, int k) {
        // coefficient of z^k as a polynomial in x
        std::vector<Rat> c(static_cast<std::size_t>(std::max(0, pz.degree_x() + 1)), Rat(0));
        for (const auto &[mo, cc] : pz.terms())
            if (mo.j == k) c[static_cast<std::size_t>(mo.i)] = cc;
        return QPoly(std::move(c));
    };

    for (int k = 1; k < order; ++k) {
        // error slice: coeff of z^k in F - prod g_i
        // compute prod g_i up to z^k
        std::vector<QPoly> prod{QPoly(Rat(1))}; // slices of the running product
        for (std::size_t i = 0; i < s; ++i) {
            std::vector<QPoly> np(std::min<std::size_t>(static_cast<std::size_t>(k) + 1, prod.size() + g[i].size() - 1));
            for (auto &e : np) e = QPoly();
            for (std::size_t a = 0; a < prod.size(); ++a)
                for (std::size_t b = 0; b < g[i].size() && a + b <= static_cast<std::size_t>(k); ++b)
                    if (a + b < np.size()) np[a + b] = np[a + b] + prod[a] * g[i][b];
            prod = std::move(np);
        }
        QPoly e = slice_of(F, k) - (static_cast<std::size_t>(k) < prod.size() ? prod[static_cast<std::size_t>(k)] : QPoly());
        if (e.is_zero()) {
            for (std::size_t i = 0; i < s; ++i) g[i].push_back(QPoly());
            continue;
        }
        for (std::size_t i = 0; i < s; ++i) {
            // delta_i = e * inv_i mod u_i
            QPoly q, r;
            qpoly_divrem(e * inv[i], u[i], q, r);
            g[i].push_back(r);
        }
    }

    std::vector<BiPoly> out(s);
    for (std::size_t i = 0; i < s; ++i) {
        BiPoly acc;
        for (std::size_t k = 0; k < g[i].size(); ++k)
            acc = acc + qpoly_as_bipoly(g[i][k], true) * BiPoly::monomial(Rat(1), 0, static_cast<int>(k));
        out[i] = acc;
    }
    return out;
}

std::vector<BiPoly> factor_squarefree_bivariate(const BiPoly &s_in);

// Kronecker substitution fallback for small degrees
std::vector<BiPoly> kronecker_factor(const BiPoly &s) {
    int e = s.degree_x() + 1;
    // u(t) = s(t, t^e)
    std::map<int, Rat> uc;
    for (const auto &[m, c] : s.terms()) uc[m.i + e * m.j] += c;
    std::vector<Rat> cv(uc.empty() ? 0 : static_cast<std::size_t>(uc.rbegin()->first) + 1, Rat(0));
    for (const auto &[k, c] : uc) cv[static_cast<std::size_t>(k)] = c;
    QPoly u(std::move(cv));
    auto uf = factor_univariate(u);
    std::vector<QPoly> pieces;
    for (const auto &[f, m] : uf.factors)
        for (int i = 0; i < m; ++i) {
            // univariate factors of a squarefree image appear once, but keep general
            std::vector<Rat> c(f.coeffs());
            pieces.push_back(QPoly(c));
        }
    // subsets of pieces, un-Kronecker, division test
    std::vector<BiPoly> out;
    BiPoly rest = s;
    std::vector<QPoly> pool = pieces;
    std::size_t card = 1;
    auto unkron = [&](const QPoly &f) {
        BiPoly r;
        for (int k = 0; k <= f.degree(); ++k) {
            if (is_zero(f.coeff(k))) continue;
            r.set_coeff(k % e, k / e, f.coeff(k));
        }
        return r;
    };
    while (card <= pool.size() && !rest.is_constant()) {
        bool found = false;
        std::vector<std::size_t> idx(card);
        for (std::size_t i = 0; i < card; ++i) idx[i] = i;
        for (;;) {
            QPoly cand(Rat(1));
            for (std::size_t i : idx) cand = cand * pool[i];
            BiPoly bc = unkron(cand).primitive();
            if (!bc.is_constant() && bipoly_divides(bc, rest)) {
                out.push_back(bc);
                rest = bipoly_divexact(rest, bc);
                std::vector<QPoly> np;
                for (std::size_t i = 0, j = 0; i < pool.size(); ++i) {
                    if (j < idx.size() && idx[j] == i) {
                        ++j;
                        continue;
                    }
                    np.push_back(pool[i]);
                }
                pool = std::move(np);
                found = true;
                break;
            }
            long pos = static_cast<long>(card) - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == pool.size() - card + static_cast<std::size_t>(pos)) --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < card; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!found) ++card;
    }
    if (!rest.is_constant()) out.push_back(rest.primitive());
    return out;
}

std::vector<BiPoly> factor_squarefree_bivariate(const BiPoly &s_in) {
    BiPoly s = s_in.primitive();
    if (s.degree_y() == 0) {
        auto fs = factor_squarefree_q(s.eval_y(Rat(0)));
        std::vector<BiPoly> out;
        for (const auto &f : fs) out.push_back(qpoly_as_bipoly(f, true));
        return out;
    }
    if (s.degree_x() == 0) {
        auto fs = factor_squarefree_q(s.eval_x(Rat(0)));
        std::vector<BiPoly> out;
        for (const auto &f : fs) out.push_back(qpoly_as_bipoly(f, false));
        return out;
    }

    int m = s.degree_x();
    auto cs = s.to_x_coeffs();
    QPoly L = cs[static_cast<std::size_t>(m)];

    // good specialization: F(x, c) squarefree of full degree
    for (long attempt = 0; attempt <= 50; ++attempt) {
        long c0 = attempt == 0 ? 0 : (attempt % 2 == 1 ? (attempt + 1) / 2 : -(attempt / 2));
        Rat c(c0);
        if (is_zero(L.eval(c))) continue;
        QPoly img = s.eval_y(c);
        if (img.degree() != m || !qpoly_is_squarefree(img)) continue;

        // monicize and shift so the specialization sits at z = 0
        BiPoly F = L.degree() == 0 ? s * (Rat(1) / L.coeff(0)) : monicize_x(s, L, m);
        BiPoly Fz = F.shift(Rat(0), c); // z = y - c
        QPoly u0 = Fz.eval_y(Rat(0));
        // u0 is monic up to a constant == 1 by construction
        auto ufac = factor_squarefree_q(u0);
        if (ufac.size() == 1) return {s};
        // monic images over Q
        std::vector<QPoly> u;
        for (auto f : ufac) u.push_back(f * (Rat(1) / f.lc()));

        int order = Fz.degree_y() + 1;
        auto lifted = bivariate_hensel(Fz, u, order);

        // recombination
        std::vector<BiPoly> out;
        BiPoly rest = s;
        std::vector<BiPoly> pool = lifted;
        std::size_t card = 1;
        while (2 * card <= pool.size()) {
            bool found = false;
            std::vector<std::size_t> idx(card);
            for (std::size_t i = 0; i < card; ++i) idx[i] = i;
            for (;;) {
                BiPoly cand(Rat(1));
                for (std::size_t i : idx) cand = cand * pool[i];
                // truncate in z beyond the lift order
                BiPoly trunc;
                for (const auto &[mo, cc] : cand.terms())
                    if (mo.j < order) trunc.set_coeff(mo.i, mo.j, cc);
                // back to y, un-monicize, primitive part
                BiPoly cy = trunc.shift(Rat(0), -c);
                // substitute x -> L(y) x
                BiPoly lx;
                {
                    BiPoly lcb = qpoly_as_bipoly(L, false);
                    for (const auto &[mo, cc] : cy.terms())
                        lx = lx + BiPoly::monomial(cc, mo.i, mo.j) * bipoly_pow(lcb, static_cast<unsigned>(mo.i));
                }
                QPoly cont = bipoly_content_x(lx);
                BiPoly candidate = cont.is_zero() ? BiPoly() : divide_by_ycontent(lx, cont).primitive();
                if (!candidate.is_zero() && !candidate.is_constant() && bipoly_divides(candidate, rest)) {
                    out.push_back(candidate);
                    rest = bipoly_divexact(rest, candidate);
                    std::vector<BiPoly> np;
                    for (std::size_t i = 0, j = 0; i < pool.size(); ++i) {
                        if (j < idx.size() && idx[j] == i) {
                            ++j;
                            continue;
                        }
                        np.push_back(pool[i]);
                    }
                    pool = std::move(np);
                    found = true;
                    break;
                }
                long pos = static_cast<long>(card) - 1;
                while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == pool.size() - card + static_cast<std::size_t>(pos)) --pos;
                if (pos < 0) break;
                ++idx[static_cast<std::size_t>(pos)];
                for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < card; ++i) idx[i] = idx[i - 1] + 1;
            }
            if (!found) ++card;
        }
        if (!rest.is_constant()) out.push_back(rest.primitive());
        return out;
    }

    if (s.degree() <= 8) return kronecker_factor(s);
    throw error("factor_bivariate: no good specialization found after 50 attempts");
}

} // namespace

QPoly UniFactorization::expand() const {
    QPoly r(unit);
    for (const auto &[f, m] : factors)
        for (int i = 0; i < m; ++i) r = r * f;
    return r;
}

BiPoly Factorization::expand() const {
    BiPoly r(unit);
    for (const auto &[f, m] : factors) r = r * bipoly_pow(f, static_cast<unsigned>(m));
    return r;
}

UniFactorization factor_univariate(const QPoly &p) {
    if (p.is_zero()) throw zero_polynomial();
    UniFactorization out;
    Rat unit;
    ZPoly z = qpoly_to_primitive_z(p, unit);
    out.unit = unit;
    QPoly prim = zpoly_to_q(z);
    if (prim.degree() <= 0) {
        out.unit = out.unit * prim.coeff(0);
        return out;
    }

    for (const auto &[sq, mult] : squarefree_decompose_q(prim)) {
        for (const auto &f : factor_squarefree_q(sq)) {
            out.factors.push_back({f, mult});
        }
    }
    // factors are primitive with positive leading coefficient, so the unit is
    // just the leading-coefficient ratio
    QPoly prod(Rat(1));
    for (const auto &[f, m] : out.factors)
        for (int i = 0; i < m; ++i) prod = prod * f;
    out.unit = p.lc() / prod.lc();
    std::sort(out.factors.begin(), out.factors.end(), [](const auto &a, const auto &b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return qpoly_as_bipoly(a.first, true).to_string() < qpoly_as_bipoly(b.first, true).to_string();
    });
    return out;
}

Factorization factor_bivariate(const BiPoly &p) {
    if (p.is_zero()) throw zero_polynomial();
    Factorization out;
    out.unit = Rat(1);
    if (p.is_constant()) {
        out.unit = p.coeff(0, 0);
        return out;
    }

    BiPoly prim = p.primitive();

    // y-content (factors free of x), then the x-primitive part
    QPoly cont = bipoly_content_x(prim);
    BiPoly pp = prim;
    if (cont.degree() > 0) {
        pp = divide_by_ycontent(prim, cont);
        auto cf = factor_univariate(cont);
        for (const auto &[f, m] : cf.factors) out.factors.push_back({qpoly_as_bipoly(f, false).primitive(), m});
    }

    if (!pp.is_constant()) {
        BiPoly sq = squarefree_part(pp);
        for (const auto &f : factor_squarefree_bivariate(sq)) {
            BiPoly fn = f.primitive();
            // multiplicity by repeated exact division
            int mult = 0;
            BiPoly rest = pp;
            while (bipoly_divides(fn, rest)) {
                rest = bipoly_divexact(rest, fn);
                ++mult;
            }
            out.factors.push_back({fn, mult});
        }
    }

    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto &a, const auto &b) { return factor_less(a.first, b.first); });

    // fix the unit so the product reproduces the input exactly
    BiPoly prod(Rat(1));
    for (const auto &[f, m] : out.factors) prod = prod * bipoly_pow(f, static_cast<unsigned>(m));
    out.unit = p.leading_coeff() / prod.leading_coeff();
    return out;
}

} // namespace symfi

#include "symfi/bipoly.hpp"

#include "symfi/errors.hpp"
#include "symfi/modular.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <sstream>

namespace symfi {

BiPoly::BiPoly(Rat c) {
    if (!symfi::is_zero(c)) t_[Mono{0, 0}] = std::move(c);
}

BiPoly BiPoly::var_x() { return monomial(Rat(1), 1, 0); }
BiPoly BiPoly::var_y() { return monomial(Rat(1), 0, 1); }

BiPoly BiPoly::monomial(const Rat &c, int i, int j) {
    BiPoly p;
    if (!symfi::is_zero(c)) p.t_[Mono{i, j}] = c;
    return p;
}

bool BiPoly::is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first == Mono{0, 0});
}

int BiPoly::degree() const {
    if (t_.empty()) return -1;
    return t_.rbegin()->first.total();
}

int BiPoly::degree_x() const {
    int d = -1;
    for (const auto &[m, c] : t_) d = std::max(d, m.i);
    return d;
}

int BiPoly::degree_y() const {
    int d = -1;
    for (const auto &[m, c] : t_) d = std::max(d, m.j);
    return d;
}

Rat BiPoly::coeff(int i, int j) const {
    auto it = t_.find(Mono{i, j});
    return it == t_.end() ? Rat(0) : it->second;
}

void BiPoly::set_coeff(int i, int j, const Rat &c) {
    if (symfi::is_zero(c))
        t_.erase(Mono{i, j});
    else
        t_[Mono{i, j}] = c;
}

Mono BiPoly::leading_monomial() const {
    if (t_.empty()) throw zero_polynomial();
    return t_.rbegin()->first;
}

const Rat &BiPoly::leading_coeff() const {
    if (t_.empty()) throw zero_polynomial();
    return t_.rbegin()->second;
}

BiPoly BiPoly::operator-() const {
    BiPoly r(*this);
    for (auto &[m, c] : r.t_) c = -c;
    return r;
}

BiPoly BiPoly::operator+(const BiPoly &o) const {
    BiPoly r(*this);
    for (const auto &[m, c] : o.t_) {
        auto it = r.t_.find(m);
        if (it == r.t_.end()) {
            r.t_[m] = c;
        } else {
            it->second += c;
            if (symfi::is_zero(it->second)) r.t_.erase(it);
        }
    }
    return r;
}

BiPoly BiPoly::operator-(const BiPoly &o) const { return *this + (-o); }

BiPoly BiPoly::operator*(const BiPoly &o) const {
    BiPoly r;
    for (const auto &[m1, c1] : t_)
        for (const auto &[m2, c2] : o.t_) {
            Mono m{m1.i + m2.i, m1.j + m2.j};
            auto it = r.t_.find(m);
            if (it == r.t_.end()) {
                Rat v = c1 * c2;
                if (!symfi::is_zero(v)) r.t_[m] = std::move(v);
            } else {
                it->second += c1 * c2;
                if (symfi::is_zero(it->second)) r.t_.erase(it);
            }
        }
    return r;
}

BiPoly BiPoly::operator*(const Rat &s) const {
    BiPoly r;
    if (symfi::is_zero(s)) return r;
    r.t_ = t_;
    for (auto &[m, c] : r.t_) c *= s;
    return r;
}

BiPoly operator*(const Rat &s, const BiPoly &p) { return p * s; }

BiPoly BiPoly::dx() const {
    BiPoly r;
    for (const auto &[m, c] : t_)
        if (m.i > 0) r.t_[Mono{m.i - 1, m.j}] = c * Rat(m.i);
    return r;
}

BiPoly BiPoly::dy() const {
    BiPoly r;
    for (const auto &[m, c] : t_)
        if (m.j > 0) r.t_[Mono{m.i, m.j - 1}] = c * Rat(m.j);
    return r;
}

Rat BiPoly::eval(const Rat &x, const Rat &y) const {
    return eval_y(y).eval(x);
}

QPoly BiPoly::eval_y(const Rat &y) const {
    std::vector<Rat> cs(static_cast<std::size_t>(std::max(0, degree_x() + 1)), Rat(0));
    for (const auto &[m, c] : t_) {
        Rat yp(1);
        for (int k = 0; k < m.j; ++k) yp *= y;
        cs[static_cast<std::size_t>(m.i)] += c * yp;
    }
    return QPoly(std::move(cs));
}

QPoly BiPoly::eval_x(const Rat &x) const { return swap_vars().eval_y(x); }

BiPoly BiPoly::swap_vars() const {
    BiPoly r;
    for (const auto &[m, c] : t_) r.t_[Mono{m.j, m.i}] = c;
    return r;
}

std::vector<QPoly> BiPoly::to_x_coeffs() const {
    std::vector<std::vector<Rat>> raw(static_cast<std::size_t>(std::max(0, degree_x() + 1)));
    for (auto &row : raw) row.assign(static_cast<std::size_t>(degree_y() + 1), Rat(0));
    for (const auto &[m, c] : t_) raw[static_cast<std::size_t>(m.i)][static_cast<std::size_t>(m.j)] = c;
    std::vector<QPoly> out;
    out.reserve(raw.size());
    for (auto &row : raw) out.emplace_back(std::move(row));
    return out;
}

BiPoly BiPoly::from_x_coeffs(const std::vector<QPoly> &cs) {
    BiPoly r;
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (int j = 0; j <= cs[i].degree(); ++j)
            r.set_coeff(static_cast<int>(i), j, cs[i].coeff(j));
    return r;
}

BiPoly BiPoly::homogeneous_part(int deg) const {
    BiPoly r;
    for (const auto &[m, c] : t_)
        if (m.total() == deg) r.t_[m] = c;
    return r;
}

BiPoly BiPoly::shift(const Rat &a, const Rat &b) const {
    // Horner in x over y-shifted coefficients
    auto cs = to_x_coeffs();
    BiPoly x_plus_a = BiPoly::var_x() + BiPoly(a);
    BiPoly acc;
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
        // Taylor-shift the Q[y] coefficient by b via Horner as well
        BiPoly cy;
        if (!it->is_zero()) {
            BiPoly y_plus_b = BiPoly::var_y() + BiPoly(b);
            for (int j = it->degree(); j >= 0; --j) cy = cy * y_plus_b + BiPoly(it->coeff(j));
        }
        acc = acc * x_plus_a + cy;
    }
    return acc;
}

BiPoly BiPoly::primitive() const {
    if (is_zero()) return *this;
    Int num_gcd(0), den_lcm(1);
    for (const auto &[m, c] : t_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rat scale(den_lcm, num_gcd);
    scale.canonicalize();
    BiPoly r = *this * scale;
    if (sgn(r.leading_coeff()) < 0) r = -r;
    return r;
}

BiPoly BiPoly::monic() const {
    if (is_zero()) return *this;
    return *this * (Rat(1) / leading_coeff());
}

std::string BiPoly::to_string() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // grlex descending
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const Mono &m = it->first;
        Rat c = it->second;
        bool neg = sgn(c) < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? "-" : "+");
        }
        first = false;
        if (neg) c = -c;
        bool has_vars = m.i > 0 || m.j > 0;
        if (!has_vars || !symfi::is_one(c)) {
            os << rat_to_string(c);
            if (has_vars) os << "*";
        }
        if (m.i > 0) {
            os << "x";
            if (m.i > 1) os << "^" << m.i;
            if (m.j > 0) os << "*";
        }
        if (m.j > 0) {
            os << "y";
            if (m.j > 1) os << "^" << m.j;
        }
    }
    return os.str();
}

BiPoly bipoly_divexact(const BiPoly &a, const BiPoly &b) {
    if (b.is_zero()) throw zero_polynomial();
    BiPoly r = a, q;
    Mono lb = b.leading_monomial();
    while (!r.is_zero()) {
        Mono lr = r.leading_monomial();
        if (lr.i < lb.i || lr.j < lb.j) throw error("bipoly_divexact: division is not exact");
        Rat f = r.leading_coeff() / b.leading_coeff();
        BiPoly t = BiPoly::monomial(f, lr.i - lb.i, lr.j - lb.j);
        q = q + t;
        r = r - t * b;
    }
    return q;
}

bool bipoly_divides(const BiPoly &b, const BiPoly &a) {
    if (a.is_zero()) return true;
    if (b.is_zero()) return false;
    BiPoly r = a;
    Mono lb = b.leading_monomial();
    while (!r.is_zero()) {
        Mono lr = r.leading_monomial();
        if (lr.i < lb.i || lr.j < lb.j) return false;
        Rat f = r.leading_coeff() / b.leading_coeff();
        r = r - BiPoly::monomial(f, lr.i - lb.i, lr.j - lb.j) * b;
    }
    return true;
}

namespace {

// content of an x-coefficient vector: monic gcd in Q[y]
QPoly content_x(const std::vector<QPoly> &cs) {
    QPoly g;
    for (const auto &c : cs) g = qpoly_gcd(g, c);
    return g;
}

std::vector<QPoly> divide_coeffs(const std::vector<QPoly> &cs, const QPoly &d) {
    std::vector<QPoly> out;
    out.reserve(cs.size());
    for (const auto &c : cs) out.push_back(c.is_zero() ? c : qpoly_divexact(c, d));
    return out;
}

int xdeg(const std::vector<QPoly> &cs) {
    for (int i = static_cast<int>(cs.size()) - 1; i >= 0; --i)
        if (!cs[static_cast<std::size_t>(i)].is_zero()) return i;
    return -1;
}

// pseudo-remainder of f by g in the main variable x, coefficients in Q[y]
std::vector<QPoly> pseudo_rem(std::vector<QPoly> f, const std::vector<QPoly> &g) {
    int df = xdeg(f), dg = xdeg(g);
    const QPoly &lg = g[static_cast<std::size_t>(dg)];
    while (df >= dg) {
        QPoly lf = f[static_cast<std::size_t>(df)];
        for (auto &c : f) c = c * lg;
        for (int j = 0; j <= dg; ++j)
            f[static_cast<std::size_t>(df - dg + j)] =
                f[static_cast<std::size_t>(df - dg + j)] - lf * g[static_cast<std::size_t>(j)];
        f[static_cast<std::size_t>(df)] = QPoly(); // force exact cancellation of the top slot
        int nd = xdeg(f);
        if (nd >= df) throw error("pseudo_rem: degree did not drop");
        df = nd;
        if (df < 0) break;
    }
    if (df < 0) return {};
    f.resize(static_cast<std::size_t>(df) + 1);
    return f;
}

std::vector<QPoly> primitive_x(std::vector<QPoly> cs) {
    int d = xdeg(cs);
    if (d < 0) return {};
    cs.resize(static_cast<std::size_t>(d) + 1);
    QPoly cont = content_x(cs);
    return divide_coeffs(cs, cont);
}

} // namespace

namespace {

// ---- multi-prime modular gcd ----

// dense bivariate poly mod p as y-major rows: v[j][i] = coeff of x^i y^j
struct PBi {
    std::vector<std::vector<std::uint64_t>> v; // indexed [j][i]
    int dx = -1, dy = -1;
    bool zero() const { return dx < 0; }
};

PBi pbi_from(const BiPoly &p, const Zp &f) {
    PBi out;
    int dx = p.degree_x(), dy = p.degree_y();
    out.v.assign(static_cast<std::size_t>(dy + 1),
                 std::vector<std::uint64_t>(static_cast<std::size_t>(dx + 1), 0));
    for (const auto &[m, c] : p.terms())
        out.v[static_cast<std::size_t>(m.j)][static_cast<std::size_t>(m.i)] = mod_p(c, f);
    out.dx = -1;
    out.dy = -1;
    for (int j = dy; j >= 0; --j)
        for (int i = dx; i >= 0; --i)
            if (out.v[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] != 0) {
                out.dx = std::max(out.dx, i);
                out.dy = std::max(out.dy, j);
            }
    // the reduction must preserve the extremal degrees, else the prime is bad
    if (out.dx != dx || out.dy != dy) throw bad_prime{};
    return out;
}

using PU = std::vector<std::uint64_t>; // univariate mod p, dense

void pu_norm(PU &a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PU pu_mul(const Zp &f, const PU &a, const PU &b) {
    if (a.empty() || b.empty()) return {};
    PU r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    return r;
}

PU pu_rem(const Zp &f, PU a, const PU &b) {
    pu_norm(a);
    int db = static_cast<int>(b.size()) - 1;
    std::uint64_t binv = f.inv(b.back());
    for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
        std::uint64_t c = f.mul(a[static_cast<std::size_t>(k)], binv);
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j)
            a[static_cast<std::size_t>(k - db + j)] =
                f.sub(a[static_cast<std::size_t>(k - db + j)], f.mul(c, b[static_cast<std::size_t>(j)]));
    }
    pu_norm(a);
    return a;
}

PU pu_gcd(const Zp &f, PU a, PU b) {
    pu_norm(a);
    pu_norm(b);
    while (!b.empty()) {
        PU r = pu_rem(f, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        std::uint64_t inv = f.inv(a.back());
        for (auto &c : a) c = f.mul(c, inv);
    }
    return a;
}

PU pu_divexact(const Zp &f, PU a, const PU &b) {
    pu_norm(a);
    if (a.empty()) return {};
    int db = static_cast<int>(b.size()) - 1;
    PU q(a.size() - b.size() + 1, 0);
    std::uint64_t binv = f.inv(b.back());
    for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
        std::uint64_t c = f.mul(a[static_cast<std::size_t>(k)], binv);
        q[static_cast<std::size_t>(k - db)] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j)
            a[static_cast<std::size_t>(k - db + j)] =
                f.sub(a[static_cast<std::size_t>(k - db + j)], f.mul(c, b[static_cast<std::size_t>(j)]));
    }
    return q;
}

// gcd over Zp[x,y] via primitive PRS in x with Zp[y] coefficients
PBi pbi_gcd(const Zp &f, const PBi &A, const PBi &B) {
    // switch to x-major: cs[i] = Zp[y] coefficient of x^i
    auto to_xmajor = [&](const PBi &P) {
        std::vector<PU> cs(static_cast<std::size_t>(P.dx + 1));
        for (auto &c : cs) c.assign(static_cast<std::size_t>(P.dy + 1), 0);
        for (int j = 0; j <= P.dy; ++j)
            for (int i = 0; i <= P.dx; ++i)
                cs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    P.v[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        for (auto &c : cs) pu_norm(c);
        return cs;
    };
    auto xdeg_of = [](const std::vector<PU> &cs) {
        for (int i = static_cast<int>(cs.size()) - 1; i >= 0; --i)
            if (!cs[static_cast<std::size_t>(i)].empty()) return i;
        return -1;
    };
    auto content_of = [&](const std::vector<PU> &cs) {
        PU g;
        for (const auto &c : cs) g = pu_gcd(f, g, c);
        return g;
    };
    auto divide_all = [&](std::vector<PU> cs, const PU &d) {
        for (auto &c : cs)
            if (!c.empty()) c = pu_divexact(f, c, d);
        return cs;
    };

    auto fa = to_xmajor(A);
    auto fb = to_xmajor(B);
    PU ca = content_of(fa), cb = content_of(fb);
    PU gcont = pu_gcd(f, ca, cb);
    auto pa = divide_all(std::move(fa), ca);
    auto pb = divide_all(std::move(fb), cb);
    if (xdeg_of(pa) < xdeg_of(pb)) std::swap(pa, pb);

    while (xdeg_of(pb) >= 0) {
        if (xdeg_of(pb) == 0) {
            pa = {PU{1}};
            break;
        }
        // pseudo-remainder then primitive part
        int df = xdeg_of(pa), dg = xdeg_of(pb);
        const PU lg = pb[static_cast<std::size_t>(dg)];
        while (df >= dg) {
            PU lf = pa[static_cast<std::size_t>(df)];
            for (auto &c : pa) c = pu_mul(f, c, lg);
            for (int j = 0; j <= dg; ++j) {
                PU t = pu_mul(f, lf, pb[static_cast<std::size_t>(j)]);
                auto &dst = pa[static_cast<std::size_t>(df - dg + j)];
                if (dst.size() < t.size()) dst.resize(t.size(), 0);
                for (std::size_t l = 0; l < t.size(); ++l) dst[l] = f.sub(dst[l], t[l]);
                pu_norm(dst);
            }
            pa[static_cast<std::size_t>(df)].clear();
            int nd = xdeg_of(pa);
            if (nd >= df) throw bad_prime{};
            df = nd;
            if (df < 0) break;
        }
        if (df < 0) {
            pa.clear();
        } else {
            pa.resize(static_cast<std::size_t>(df) + 1);
            PU cont = content_of(pa);
            pa = divide_all(std::move(pa), cont);
        }
        std::swap(pa, pb);
        std::swap(pa, pb); // keep roles: pa stays the larger
        std::vector<PU> tmp = std::move(pb);
        pb = std::move(pa);
        pa = std::move(tmp);
    }
    {
        PU cont = content_of(pa);
        if (!cont.empty()) pa = divide_all(std::move(pa), cont);
    }
    // multiply the content gcd back in
    std::vector<PU> res(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i)
        res[i] = pa[i].empty() ? PU{} : pu_mul(f, pa[i], gcont);

    PBi out;
    int dx = xdeg_of(res);
    int dy = 0;
    for (const auto &c : res) dy = std::max(dy, static_cast<int>(c.size()) - 1);
    if (dx < 0) {
        out.dx = out.dy = -1;
        return out;
    }
    out.dx = dx;
    out.dy = dy;
    out.v.assign(static_cast<std::size_t>(dy + 1),
                 std::vector<std::uint64_t>(static_cast<std::size_t>(dx + 1), 0));
    for (int i = 0; i <= dx; ++i)
        for (std::size_t j = 0; j < res[static_cast<std::size_t>(i)].size(); ++j)
            out.v[j][static_cast<std::size_t>(i)] = res[static_cast<std::size_t>(i)][j];
    // normalize: grlex-leading coefficient 1
    Mono lead{-1, -1};
    MonoLess less;
    std::uint64_t lc = 0;
    for (int j = 0; j <= dy; ++j)
        for (int i = 0; i <= dx; ++i) {
            if (out.v[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] == 0) continue;
            Mono m{i, j};
            if (lead.i < 0 || less(lead, m)) {
                lead = m;
                lc = out.v[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            }
        }
    std::uint64_t inv = f.inv(lc);
    for (auto &row : out.v)
        for (auto &c : row) c = f.mul(c, inv);
    return out;
}

// Las Vegas modular gcd: per-prime PRS over Zp, CRT + rational
// reconstruction of the monic form, certified by exact divisibility
std::optional<BiPoly> bipoly_gcd_modular(const BiPoly &a, const BiPoly &b) {
    struct Pass {
        std::uint64_t p;
        PBi g;
    };
    std::vector<Pass> passes;
    std::size_t prime_idx = 0;
    std::size_t want = 2;
    auto signature = [](const PBi &g) {
        std::uint64_t h = 1469598103u;
        for (std::size_t j = 0; j < g.v.size(); ++j)
            for (std::size_t i = 0; i < g.v[j].size(); ++i)
                if (g.v[j][i] != 0) h = h * 1099511628211ull + (j * 131071 + i);
        return h;
    };
    while (prime_idx < 120) {
        while (passes.size() < want && prime_idx < 120) {
            try {
                Zp f(nth_prime(prime_idx++));
                PBi ga = pbi_from(a, f), gb = pbi_from(b, f);
                passes.push_back(Pass{f.p, pbi_gcd(f, ga, gb)});
            } catch (const bad_prime &) {
            }
        }
        if (passes.empty()) return std::nullopt;
        // keep the group with the lowest gcd degree (bad primes inflate it)
        int best_deg = INT_MAX;
        for (const auto &ps : passes) best_deg = std::min(best_deg, ps.g.dx + ps.g.dy);
        std::vector<const Pass *> group;
        std::uint64_t sig = 0;
        for (const auto &ps : passes)
            if (ps.g.dx + ps.g.dy == best_deg) {
                if (group.empty()) sig = signature(ps.g);
                if (signature(ps.g) == sig) group.push_back(&ps);
            }
        if (group.front()->g.dx + group.front()->g.dy == 0) return BiPoly(Rat(1));
        bool ok = true;
        BiPoly cand;
        const PBi &shape = group.front()->g;
        for (int j = 0; j <= shape.dy && ok; ++j)
            for (int i = 0; i <= shape.dx && ok; ++i) {
                Int value(0), modulus(1);
                bool nonzero = false;
                for (const auto *ps : group) {
                    std::uint64_t r = ps->g.v[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
                    nonzero = nonzero || r != 0;
                    if (modulus == 1) {
                        value = Int(static_cast<unsigned long>(r));
                        modulus = Int(static_cast<unsigned long>(ps->p));
                    } else {
                        value = crt_pair(value, modulus, r, ps->p);
                        modulus *= Int(static_cast<unsigned long>(ps->p));
                    }
                }
                if (!nonzero) continue;
                auto rec = rational_reconstruct(value, modulus);
                if (!rec) {
                    ok = false;
                    break;
                }
                cand.set_coeff(i, j, *rec);
            }
        if (ok && !cand.is_zero()) {
            BiPoly g = cand.primitive();
            if (bipoly_divides(g, a) && bipoly_divides(g, b)) return g;
        }
        want += 2;
        if (want > 64) break;
    }
    return std::nullopt;
}

} // namespace

static BiPoly bipoly_gcd_prs(const BiPoly &a, const BiPoly &b);

BiPoly bipoly_gcd(const BiPoly &a, const BiPoly &b) {
    if (a.is_zero() && b.is_zero()) return BiPoly();
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    if (a.is_constant() || b.is_constant()) return BiPoly(Rat(1));
    auto modular = bipoly_gcd_modular(a, b);
    if (modular) return *modular;
    return bipoly_gcd_prs(a, b);
}

static BiPoly bipoly_gcd_prs(const BiPoly &a, const BiPoly &b) {
    auto fa = a.to_x_coeffs();
    auto fb = b.to_x_coeffs();
    QPoly ca = content_x(fa), cb = content_x(fb);
    QPoly gcont = qpoly_gcd(ca, cb);

    std::vector<QPoly> pa = divide_coeffs(fa, ca);
    std::vector<QPoly> pb = divide_coeffs(fb, cb);
    if (xdeg(pa) < xdeg(pb)) std::swap(pa, pb);

    // primitive Euclidean PRS on the primitive parts
    while (xdeg(pb) >= 0) {
        if (xdeg(pb) == 0) {
            pa = {QPoly(Rat(1))};
            break;
        }
        std::vector<QPoly> r = pseudo_rem(pa, pb);
        r = primitive_x(std::move(r));
        pa = std::move(pb);
        pb = std::move(r);
    }
    pa = primitive_x(std::move(pa));

    BiPoly g = BiPoly::from_x_coeffs(pa);
    BiPoly cont_bp;
    for (int j = 0; j <= gcont.degree(); ++j) cont_bp.set_coeff(0, j, gcont.coeff(j));
    return (g * cont_bp).primitive();
}

BiPoly bipoly_pow(const BiPoly &p, unsigned e) {
    BiPoly r(Rat(1));
    BiPoly base = p;
    while (e) {
        if (e & 1u) r = r * base;
        base = base * base;
        e >>= 1u;
    }
    return r;
}

} // namespace symfi

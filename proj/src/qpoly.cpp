#include "symfi/qpoly.hpp"

#include "symfi/errors.hpp"

namespace symfi {

QPoly::QPoly(Rat c) {
    if (!symfi::is_zero(c)) c_.push_back(std::move(c));
}

QPoly::QPoly(std::vector<Rat> cs) : c_(std::move(cs)) { normalize(); }

QPoly QPoly::monomial(const Rat &c, int k) {
    QPoly p;
    if (symfi::is_zero(c)) return p;
    p.c_.assign(static_cast<std::size_t>(k) + 1, Rat(0));
    p.c_.back() = c;
    return p;
}

void QPoly::normalize() {
    while (!c_.empty() && symfi::is_zero(c_.back())) c_.pop_back();
}

Rat QPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Rat(0);
    return c_[static_cast<std::size_t>(k)];
}

QPoly QPoly::operator-() const {
    QPoly r(*this);
    for (auto &x : r.c_) x = -x;
    return r;
}

QPoly QPoly::operator+(const QPoly &o) const {
    QPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        if (i < c_.size()) r.c_[i] += c_[i];
        if (i < o.c_.size()) r.c_[i] += o.c_[i];
    }
    r.normalize();
    return r;
}

QPoly QPoly::operator-(const QPoly &o) const { return *this + (-o); }

QPoly QPoly::operator*(const QPoly &o) const {
    QPoly r;
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (symfi::is_zero(c_[i])) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    }
    r.normalize();
    return r;
}

QPoly QPoly::operator*(const Rat &s) const {
    if (symfi::is_zero(s)) return QPoly();
    QPoly r(*this);
    for (auto &x : r.c_) x *= s;
    return r;
}

Rat QPoly::eval(const Rat &x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

QPoly QPoly::derivative() const {
    QPoly r;
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return r;
}

void qpoly_divrem(const QPoly &a, const QPoly &b, QPoly &quo, QPoly &rem) {
    if (b.is_zero()) throw zero_polynomial();
    std::vector<Rat> r = a.coeffs();
    int db = b.degree();
    std::vector<Rat> q;
    if (a.degree() >= db) q.assign(static_cast<std::size_t>(a.degree() - db) + 1, Rat(0));
    for (int k = a.degree(); k >= db; --k) {
        Rat f = r[static_cast<std::size_t>(k)] / b.lc();
        if (!is_zero(f)) {
            q[static_cast<std::size_t>(k - db)] = f;
            for (int j = 0; j <= db; ++j)
                r[static_cast<std::size_t>(k - db + j)] -= f * b.coeff(j);
        }
    }
    quo = QPoly(std::move(q));
    rem = QPoly(std::move(r));
}

bool qpoly_divides(const QPoly &b, const QPoly &a) {
    if (a.is_zero()) return true;
    if (b.is_zero()) return false;
    QPoly q, r;
    qpoly_divrem(a, b, q, r);
    return r.is_zero();
}

QPoly qpoly_divexact(const QPoly &a, const QPoly &b) {
    QPoly q, r;
    qpoly_divrem(a, b, q, r);
    if (!r.is_zero()) throw error("qpoly_divexact: division is not exact");
    return q;
}

QPoly qpoly_gcd(const QPoly &a, const QPoly &b) {
    QPoly f = a, g = b;
    while (!g.is_zero()) {
        QPoly q, r;
        qpoly_divrem(f, g, q, r);
        // keep coefficients small: renormalize monic each step
        if (!r.is_zero()) r = r * (Rat(1) / r.lc());
        f = g;
        g = r;
    }
    if (!f.is_zero()) f = f * (Rat(1) / f.lc());
    return f;
}

bool qpoly_is_squarefree(const QPoly &p) {
    if (p.is_zero()) return false;
    if (p.degree() <= 1) return true;
    QPoly g = qpoly_gcd(p, p.derivative());
    return g.degree() == 0;
}

} // namespace symfi

#include "symfi/ratfunc.hpp"

#include "symfi/errors.hpp"

namespace symfi {

RatFunc::RatFunc(const BiPoly &num, const BiPoly &den) {
    if (den.is_zero()) throw zero_polynomial();
    if (num.is_zero()) {
        num_ = BiPoly();
        den_ = BiPoly(Rat(1));
        return;
    }
    BiPoly g = bipoly_gcd(num, den);
    BiPoly n = bipoly_divexact(num, g);
    BiPoly d = bipoly_divexact(den, g);
    Rat lc = d.leading_coeff();
    num_ = n * (Rat(1) / lc);
    den_ = d * (Rat(1) / lc);
}

RatFunc RatFunc::operator+(const RatFunc &o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc &o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-() const {
    RatFunc r(*this);
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator*(const RatFunc &o) const {
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const Rat &s) const {
    if (symfi::is_zero(s)) return RatFunc();
    RatFunc r(*this);
    r.num_ = r.num_ * s;
    return r;
}

RatFunc RatFunc::operator/(const RatFunc &o) const {
    if (o.is_zero()) throw zero_polynomial();
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::dx() const {
    return RatFunc(num_.dx() * den_ - num_ * den_.dx(), den_ * den_);
}

RatFunc RatFunc::dy() const {
    return RatFunc(num_.dy() * den_ - num_ * den_.dy(), den_ * den_);
}

std::string RatFunc::to_string() const {
    if (den_ == BiPoly(Rat(1))) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

bool proportional(const BiPoly &a, const BiPoly &b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    Rat c = a.leading_coeff() / b.leading_coeff();
    return a == b * c;
}

bool proportional(const RatFunc &a, const RatFunc &b) {
    // reduced forms share the same monic denominator when proportional
    return a.den() == b.den() && proportional(a.num(), b.num());
}

} // namespace symfi

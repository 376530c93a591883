#ifndef SYMFI_RATFUNC_HPP
#define SYMFI_RATFUNC_HPP

#include "symfi/bipoly.hpp"

#include <string>

namespace symfi {

// Reduced rational function over Q(x,y). Canonical form: gcd(num, den)
// constant, den != 0 with grlex leading coefficient equal to 1.
class RatFunc {
  public:
    RatFunc() : num_(), den_(Rat(1)) {}
    explicit RatFunc(const BiPoly &p) : num_(p), den_(Rat(1)) {}
    RatFunc(const BiPoly &num, const BiPoly &den);

    const BiPoly &num() const { return num_; }
    const BiPoly &den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    int degree() const { return std::max(num_.degree(), den_.degree()); }

    RatFunc operator+(const RatFunc &o) const;
    RatFunc operator-(const RatFunc &o) const;
    RatFunc operator-() const;
    RatFunc operator*(const RatFunc &o) const;
    RatFunc operator*(const Rat &s) const;
    RatFunc operator/(const RatFunc &o) const;
    bool operator==(const RatFunc &o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc &o) const { return !(*this == o); }

    RatFunc dx() const;
    RatFunc dy() const;

    std::string to_string() const;

  private:
    BiPoly num_, den_;
};

// true iff a = c * b for some nonzero rational constant c
bool proportional(const RatFunc &a, const RatFunc &b);
bool proportional(const BiPoly &a, const BiPoly &b);

} // namespace symfi

#endif

#ifndef SYMFI_QPOLY_HPP
#define SYMFI_QPOLY_HPP

#include "symfi/rat.hpp"

#include <vector>

namespace symfi {

// Dense univariate polynomial over Q. coeffs[k] is the coefficient of t^k;
// the top coefficient is always nonzero (zero polynomial has empty coeffs).
class QPoly {
  public:
    QPoly() = default;
    explicit QPoly(Rat c);
    explicit QPoly(std::vector<Rat> cs);

    static QPoly monomial(const Rat &c, int k);

    bool is_zero() const { return c_.empty(); }
    // degree of zero polynomial is -1 here (callers check is_zero first)
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rat> &coeffs() const { return c_; }
    Rat coeff(int k) const;
    const Rat &lc() const { return c_.back(); }

    QPoly operator-() const;
    QPoly operator+(const QPoly &o) const;
    QPoly operator-(const QPoly &o) const;
    QPoly operator*(const QPoly &o) const;
    QPoly operator*(const Rat &s) const;
    bool operator==(const QPoly &o) const { return c_ == o.c_; }

    Rat eval(const Rat &x) const;
    QPoly derivative() const;

    void normalize();

  private:
    std::vector<Rat> c_;
};

// quotient and remainder over the field Q
void qpoly_divrem(const QPoly &a, const QPoly &b, QPoly &quo, QPoly &rem);
bool qpoly_divides(const QPoly &b, const QPoly &a); // b | a
QPoly qpoly_divexact(const QPoly &a, const QPoly &b);

// monic gcd over Q
QPoly qpoly_gcd(const QPoly &a, const QPoly &b);

// p squarefree over Q <=> gcd(p, p') constant
bool qpoly_is_squarefree(const QPoly &p);

} // namespace symfi

#endif

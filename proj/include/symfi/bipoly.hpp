#ifndef SYMFI_BIPOLY_HPP
#define SYMFI_BIPOLY_HPP

#include "symfi/qpoly.hpp"
#include "symfi/rat.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace symfi {

// Monomial x^i y^j, ordered graded-lexicographically with x > y.
struct Mono {
    int i = 0;
    int j = 0;
    int total() const { return i + j; }
    friend bool operator==(const Mono &a, const Mono &b) { return a.i == b.i && a.j == b.j; }
};

// grlex with x > y: compare total degree, then x-exponent.
struct MonoLess {
    bool operator()(const Mono &a, const Mono &b) const {
        if (a.total() != b.total()) return a.total() < b.total();
        return a.i < b.i;
    }
};

// Exact bivariate polynomial over Q: a finite association of exponent pairs
// to nonzero rational coefficients.
class BiPoly {
  public:
    using TermMap = std::map<Mono, Rat, MonoLess>;

    BiPoly() = default;
    explicit BiPoly(Rat c);
    static BiPoly var_x();
    static BiPoly var_y();
    static BiPoly monomial(const Rat &c, int i, int j);

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    // total degree; the zero polynomial reports the distinguished marker -1
    int degree() const;
    int degree_x() const;
    int degree_y() const;
    std::size_t term_count() const { return t_.size(); }
    const TermMap &terms() const { return t_; }

    Rat coeff(int i, int j) const;
    void set_coeff(int i, int j, const Rat &c);
    // leading term in grlex (x > y); polynomial must be nonzero
    Mono leading_monomial() const;
    const Rat &leading_coeff() const;

    BiPoly operator-() const;
    BiPoly operator+(const BiPoly &o) const;
    BiPoly operator-(const BiPoly &o) const;
    BiPoly operator*(const BiPoly &o) const;
    BiPoly operator*(const Rat &s) const;
    bool operator==(const BiPoly &o) const { return t_ == o.t_; }
    bool operator!=(const BiPoly &o) const { return !(t_ == o.t_); }

    BiPoly dx() const;
    BiPoly dy() const;

    Rat eval(const Rat &x, const Rat &y) const;
    QPoly eval_y(const Rat &y) const; // substitute y, polynomial in x
    QPoly eval_x(const Rat &x) const; // substitute x, polynomial in y
    // substitution x -> x + a, y -> y + b
    BiPoly shift(const Rat &a, const Rat &b) const;
    BiPoly swap_vars() const;

    // view as polynomial in x with coefficients in Q[y]; index = x-degree
    std::vector<QPoly> to_x_coeffs() const;
    static BiPoly from_x_coeffs(const std::vector<QPoly> &cs);
    // homogeneous component of given total degree
    BiPoly homogeneous_part(int deg) const;

    // scale so content over Z is 1 and the grlex leading coefficient is positive
    BiPoly primitive() const;
    // scale so the grlex leading coefficient is exactly 1
    BiPoly monic() const;

    std::string to_string() const;

  private:
    TermMap t_;
};

BiPoly operator*(const Rat &s, const BiPoly &p);

// exact division; throws if not divisible
BiPoly bipoly_divexact(const BiPoly &a, const BiPoly &b);
bool bipoly_divides(const BiPoly &b, const BiPoly &a);

// gcd over Q[x,y], normalized primitive with positive leading coefficient;
// gcd(f, 0) = normalize(f), gcd(0, 0) = 0
BiPoly bipoly_gcd(const BiPoly &a, const BiPoly &b);

BiPoly bipoly_pow(const BiPoly &p, unsigned e);

} // namespace symfi

#endif

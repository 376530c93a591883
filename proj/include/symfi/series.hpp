#ifndef SYMFI_SERIES_HPP
#define SYMFI_SERIES_HPP

#include "symfi/bipoly.hpp"
#include "symfi/rat.hpp"

#include <vector>

namespace symfi {

// Truncated power series about a rational center: coefficients of
// (x - center)^0 .. (x - center)^{order-1}. All arithmetic truncates at the
// common order; mixing centers or orders is an error.
class Series {
  public:
    Series() = default;
    Series(Rat center, std::vector<Rat> coeffs)
        : center_(std::move(center)), c_(std::move(coeffs)) {}
    static Series zero(const Rat &center, std::size_t order) {
        return Series(center, std::vector<Rat>(order, Rat(0)));
    }
    static Series constant(const Rat &center, std::size_t order, const Rat &v);

    const Rat &center() const { return center_; }
    std::size_t order() const { return c_.size(); }
    const std::vector<Rat> &coeffs() const { return c_; }
    const Rat &operator[](std::size_t k) const { return c_[k]; }
    Rat &operator[](std::size_t k) { return c_[k]; }

    bool is_zero() const;
    Series truncate(std::size_t new_order) const;

    Series operator+(const Series &o) const;
    Series operator-(const Series &o) const;
    Series operator-() const;
    Series operator*(const Rat &s) const;
    bool operator==(const Series &o) const { return center_ == o.center_ && c_ == o.c_; }

  private:
    void check_compat(const Series &o) const;
    Rat center_;
    std::vector<Rat> c_;
    friend Series series_mul(const Series &, const Series &);
    friend Series series_div(const Series &, const Series &);
};

Series series_add(const Series &a, const Series &b);
Series series_mul(const Series &a, const Series &b);
// division requires the divisor's constant term to be nonzero
Series series_div(const Series &a, const Series &b);
Series series_pow(const Series &a, unsigned e);
// antiderivative with value 0 at the center, same truncation order
Series series_integrate(const Series &a);
Series series_derivative(const Series &a);
// exp of the antiderivative of a; the result has constant term 1
Series series_exp_of_integral(const Series &a);

// substitute the series y for the variable y in p, with x -> center + t
Series series_eval(const BiPoly &p, const Series &y);

} // namespace symfi

#endif

#ifndef SYMFI_ERRORS_HPP
#define SYMFI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace symfi {

struct error : std::runtime_error {
    explicit error(const std::string &msg) : std::runtime_error(msg) {}
};

struct zero_polynomial : error {
    zero_polynomial() : error("ZeroPolynomial: operation requires a nonzero polynomial") {}
};

struct center_mismatch : error {
    center_mismatch() : error("CenterMismatch: series operands have different centers") {}
};

struct order_mismatch : error {
    order_mismatch() : error("OrderMismatch: series operands have different truncation orders") {}
};

struct base_point_on_A : error {
    base_point_on_A() : error("BasePointOnA: A vanishes at the base point") {}
};

struct jet_too_shallow : error {
    jet_too_shallow() : error("JetTooShallow: flow jet does not cover the requested r or N") {}
};

struct no_admissible_point : error {
    no_admissible_point() : error("NoAdmissiblePoint: A vanishes on every sampled point") {}
};

struct non_polynomial_clearance : error {
    explicit non_polynomial_clearance(const std::string &where)
        : error("NonPolynomialClearance: " + where) {}
};

struct invalid_field : error {
    explicit invalid_field(const std::string &why) : error("InvalidField: " + why) {}
};

struct syntax_error : error {
    std::size_t position;
    syntax_error(const std::string &why, std::size_t pos)
        : error("SyntaxError at position " + std::to_string(pos) + ": " + why), position(pos) {}
};

struct unknown_variable : error {
    explicit unknown_variable(const std::string &name)
        : error("UnknownVariable: '" + name + "' (only x and y are allowed)") {}
};

struct negative_exponent : error {
    negative_exponent() : error("NegativeExponent: exponents must be nonnegative integers") {}
};

} // namespace symfi

#endif

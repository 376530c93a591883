#ifndef SYMFI_FACTOR_HPP
#define SYMFI_FACTOR_HPP

#include "symfi/bipoly.hpp"
#include "symfi/qpoly.hpp"

#include <utility>
#include <vector>

namespace symfi {

// unit * prod factor_i ^ mult_i reproduces the input exactly; factors are
// primitive over Z, irreducible over Q, with positive leading coefficient
struct UniFactorization {
    Rat unit;
    std::vector<std::pair<QPoly, int>> factors;
    QPoly expand() const;
};

struct Factorization {
    Rat unit;
    std::vector<std::pair<BiPoly, int>> factors;
    BiPoly expand() const;
};

// complete irreducible factorization over Q; throws ZeroPolynomial on 0
UniFactorization factor_univariate(const QPoly &p);
Factorization factor_bivariate(const BiPoly &p);

} // namespace symfi

#endif

#ifndef SYMFI_VECTOR_FIELD_HPP
#define SYMFI_VECTOR_FIELD_HPP

#include "symfi/bipoly.hpp"
#include "symfi/ratfunc.hpp"

namespace symfi {

// Planar polynomial vector field xdot = A(x,y), ydot = B(x,y) with
// gcd(A,B) = 1 and A, B nonzero (enforced at construction).
class VectorField {
  public:
    VectorField(BiPoly A, BiPoly B);

    const BiPoly &A() const { return A_; }
    const BiPoly &B() const { return B_; }
    int d() const { return d_; }

    // numerator N_k of d^k/dy^k (B/A) = N_k / A^{k+1}
    const BiPoly &dyBA_num(int k) const;

  private:
    BiPoly A_, B_;
    int d_;
    BiPoly n1_, n2_, n3_;
};

// the derivation D0 = A dx + B dy
BiPoly apply_D0(const VectorField &vf, const BiPoly &f);
RatFunc apply_D0(const VectorField &vf, const RatFunc &f);

// d^k/dy^k (B/A) in reduced form, k in 1..3
RatFunc dy_BA(const VectorField &vf, int k);

// P_red = P / gcd(P, dP/dx, dP/dy): same irreducible factors, multiplicity one
BiPoly squarefree_part(const BiPoly &p);

// divide A and B by their gcd (and integer content); used by generated
// families where the raw pair is not coprime
void reduce_field_pair(BiPoly &A, BiPoly &B);

} // namespace symfi

#endif

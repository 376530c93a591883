#include "symfi/vector_field.hpp"

#include "symfi/errors.hpp"

namespace symfi {

VectorField::VectorField(BiPoly A, BiPoly B) : A_(std::move(A)), B_(std::move(B)) {
    if (A_.is_zero() || B_.is_zero())
        throw invalid_field("A = 0 or B = 0 gives the trivial first integral x or y");
    BiPoly g = bipoly_gcd(A_, B_);
    if (!g.is_constant())
        throw invalid_field("gcd(A,B) = " + g.to_string() + " is not constant");
    d_ = std::max(A_.degree(), B_.degree());
    // N1 = A By - B Ay, N_{k+1} = A dNk/dy - (k+1) Nk Ay
    n1_ = A_ * B_.dy() - B_ * A_.dy();
    n2_ = A_ * n1_.dy() - Rat(2) * n1_ * A_.dy();
    n3_ = A_ * n2_.dy() - Rat(3) * n2_ * A_.dy();
}

const BiPoly &VectorField::dyBA_num(int k) const {
    switch (k) {
        case 1: return n1_;
        case 2: return n2_;
        case 3: return n3_;
        default: throw error("dyBA_num: k must be 1, 2 or 3");
    }
}

BiPoly apply_D0(const VectorField &vf, const BiPoly &f) {
    return vf.A() * f.dx() + vf.B() * f.dy();
}

RatFunc apply_D0(const VectorField &vf, const RatFunc &f) {
    return RatFunc(vf.A()) * f.dx() + RatFunc(vf.B()) * f.dy();
}

RatFunc dy_BA(const VectorField &vf, int k) {
    if (k < 1 || k > 3) throw error("dy_BA: k must be in 1..3");
    return RatFunc(vf.dyBA_num(k), bipoly_pow(vf.A(), static_cast<unsigned>(k + 1)));
}

BiPoly squarefree_part(const BiPoly &p) {
    if (p.is_zero()) throw zero_polynomial();
    if (p.is_constant()) return BiPoly(Rat(1));
    BiPoly g = bipoly_gcd(bipoly_gcd(p, p.dx()), p.dy());
    return bipoly_divexact(p, g).primitive();
}

void reduce_field_pair(BiPoly &A, BiPoly &B) {
    if (A.is_zero() || B.is_zero()) return;
    BiPoly g = bipoly_gcd(A, B);
    if (!g.is_constant()) {
        A = bipoly_divexact(A, g);
        B = bipoly_divexact(B, g);
    }
    // scale both by the same constant: separate scaling would change the field
    Int num_gcd(0), den_lcm(1);
    for (const BiPoly *p : {&A, &B})
        for (const auto &[m, c] : p->terms()) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        }
    Rat scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (sgn(A.leading_coeff() * scale) < 0) scale = -scale;
    A = A * scale;
    B = B * scale;
}

} // namespace symfi

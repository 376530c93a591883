#include "doctest.h"

#include "symfi/bipoly.hpp"
#include "symfi/errors.hpp"
#include "symfi/ratfunc.hpp"
#include "symfi/series.hpp"
#include "symfi/vector_field.hpp"

using namespace symfi;

namespace {

BiPoly X() { return BiPoly::var_x(); }
BiPoly Y() { return BiPoly::var_y(); }
BiPoly C(long n) { return BiPoly(Rat(n)); }

BiPoly random_bipoly(Prng &rng, int maxdeg) {
    BiPoly p;
    for (int i = 0; i <= maxdeg; ++i)
        for (int j = 0; i + j <= maxdeg; ++j)
            if (rng.next() % 3 == 0) p.set_coeff(i, j, Rat(rng.uniform(-9, 9)));
    return p;
}

} // namespace

TEST_CASE("bipoly basics") {
    BiPoly p = X() * X() + Rat(2) * X() * Y() - C(3);
    CHECK(p.degree() == 2);
    CHECK(p.coeff(1, 1) == Rat(2));
    CHECK(p.eval(Rat(2), Rat(1)) == Rat(4 + 4 - 3));
    CHECK(p.to_string() == "x^2+2*x*y-3");
    CHECK(BiPoly().degree() == -1);

    BiPoly q = p.shift(Rat(1), Rat(-1));
    CHECK(q.eval(Rat(0), Rat(0)) == p.eval(Rat(1), Rat(-1)));
    CHECK(q.eval(Rat(2), Rat(5)) == p.eval(Rat(3), Rat(4)));
}

TEST_CASE("bipoly gcd and exact division") {
    BiPoly a = (X() + Y()) * (X() + Y()) * (X() - C(1));
    BiPoly b = (X() + Y()) * (Y() - C(2));
    BiPoly g = bipoly_gcd(a, b);
    CHECK(proportional(g, X() + Y()));
    CHECK(bipoly_divexact(a, X() + Y()) == (X() + Y()) * (X() - C(1)));
    CHECK(bipoly_divides(X() + Y(), a));
    CHECK_FALSE(bipoly_divides(X() - Y(), a));

    Prng rng(42);
    for (int t = 0; t < 25; ++t) {
        BiPoly f = random_bipoly(rng, 3), h = random_bipoly(rng, 2), w = random_bipoly(rng, 2);
        if (f.is_zero() || h.is_zero() || w.is_zero()) continue;
        BiPoly gg = bipoly_gcd(f * w, h * w);
        CHECK(bipoly_divides(w, gg));
        CHECK(bipoly_divides(gg, f * w));
        CHECK(bipoly_divides(gg, h * w));
    }
}

TEST_CASE("squarefree_part") {
    BiPoly a = (X() + Y()) * (X() + Y()) * (X() - C(1));
    CHECK(proportional(squarefree_part(a), (X() + Y()) * (X() - C(1))));
    BiPoly b = X() * Y() - C(2);
    CHECK(proportional(squarefree_part(b), b));
    BiPoly c = X() * X() * X();
    CHECK(proportional(squarefree_part(c), X()));
    CHECK_THROWS_AS(squarefree_part(BiPoly()), zero_polynomial);
    // result divides the input and is squarefree
    BiPoly s = squarefree_part(a);
    CHECK(bipoly_divides(s, a));
    CHECK(bipoly_gcd(bipoly_gcd(s, s.dx()), s.dy()).is_constant());
}

TEST_CASE("apply_D0 examples and properties") {
    VectorField vf(X(), -Y()); // A=x, B=-y
    CHECK(apply_D0(vf, X() * Y()).is_zero());
    CHECK(apply_D0(vf, C(7)).is_zero());
    VectorField vf2(C(1), C(1));
    CHECK(apply_D0(vf2, X() - Y()).is_zero());

    // Q-linearity and Leibniz on random pairs
    Prng rng(7);
    for (int t = 0; t < 20; ++t) {
        BiPoly f = random_bipoly(rng, 3), g = random_bipoly(rng, 3);
        Rat lam(rng.uniform(-5, 5)), mu(rng.uniform(-5, 5));
        CHECK(apply_D0(vf, f * lam + g * mu) == apply_D0(vf, f) * lam + apply_D0(vf, g) * mu);
        CHECK(apply_D0(vf, f * g) == apply_D0(vf, f) * g + f * apply_D0(vf, g));
    }
}

TEST_CASE("dy_BA") {
    VectorField vf(C(1), Y() * Y()); // A=1, B=y^2
    CHECK(dy_BA(vf, 1) == RatFunc(Rat(2) * Y()));
    CHECK(dy_BA(vf, 2) == RatFunc(C(2)));
    CHECK(dy_BA(vf, 3).is_zero());
    VectorField vf2(X(), Y());
    CHECK(dy_BA(vf2, 1) == RatFunc(C(1), X()));
    // denominator divides A^{k+1}
    VectorField vf3(X() + Y() + C(1), X() * Y() - C(2));
    for (int k = 1; k <= 3; ++k) {
        RatFunc r = dy_BA(vf3, k);
        CHECK(bipoly_divides(r.den(), bipoly_pow(vf3.A(), static_cast<unsigned>(k + 1))));
    }
}

TEST_CASE("vector field validation") {
    CHECK_THROWS_AS(VectorField(X(), X()), invalid_field);
    CHECK_THROWS_AS(VectorField(BiPoly(), X()), invalid_field);
    CHECK_THROWS_AS(VectorField(X() * Y(), X() * X()), invalid_field);
}

TEST_CASE("ratfunc canonical reduction") {
    BiPoly n = (X() + Y()) * (X() - Y());
    BiPoly d = (X() + Y()) * (Rat(2) * X());
    RatFunc f(n, d);
    RatFunc g(X() - Y(), Rat(2) * X());
    CHECK(f == g);
    CHECK(f.den().leading_coeff() == Rat(1));
    // same function built from different unreduced pairs is bit-identical
    RatFunc h((X() - Y()) * (Y() + C(3)) * Rat(5), Rat(2) * X() * (Y() + C(3)) * Rat(5));
    CHECK(h == f);
    CHECK(RatFunc(n, d).to_string() == h.to_string());
}

TEST_CASE("series arithmetic") {
    Rat x0(0);
    Series a(x0, {Rat(1), Rat(1)});
    Series p = series_mul(a, a);
    CHECK(p.coeffs() == std::vector<Rat>{Rat(1), Rat(2)});

    Series z = Series::zero(x0, 4);
    Series e = series_exp_of_integral(z);
    CHECK(e.coeffs() == std::vector<Rat>{Rat(1), Rat(0), Rat(0), Rat(0)});

    // exp of integral of constant 1 = e^t
    Series one = Series::constant(x0, 5, Rat(1));
    Series et = series_exp_of_integral(one);
    CHECK(et[3] == Rat(1, 6));
    CHECK(et[4] == Rat(1, 24));

    Series q = series_div(et, et);
    CHECK(q[0] == Rat(1));
    CHECK(q[3] == Rat(0));

    CHECK_THROWS_AS(series_mul(a, Series::zero(x0, 3)), order_mismatch);
    CHECK_THROWS_AS(series_mul(a, Series::zero(Rat(1), 2)), center_mismatch);
}

TEST_CASE("series_eval examples") {
    // p = x + y along y = y0 + t at center x0: (x0+y0) + 2t
    Rat x0(3), y0(5);
    Series y(x0, {y0, Rat(1), Rat(0), Rat(0)});
    Series s = series_eval(BiPoly::var_x() + BiPoly::var_y(), y);
    CHECK(s.coeffs() == std::vector<Rat>{Rat(8), Rat(2), Rat(0), Rat(0)});
}

TEST_CASE("series_eval against polynomial-substitution oracle") {
    // oracle: substitute the truncation of y as a polynomial in t and expand
    Prng rng(2024);
    for (int t = 0; t < 10; ++t) {
        std::size_t order = 4 + rng.next() % 9; // up to 12
        Rat x0(rng.uniform(-3, 3)), y0(rng.uniform(-3, 3));
        std::vector<Rat> yc(order);
        yc[0] = y0;
        for (std::size_t k = 1; k < order; ++k) yc[k] = rat_of(rng.uniform(-4, 4), 1 + (long)(rng.next() % 3));
        Series y(x0, yc);
        BiPoly p = random_bipoly(rng, 3);

        Series got = series_eval(p, y);

        // independent path: p(x0 + T, y_poly(T)) as a BiPoly in (T, dummy)
        BiPoly T = BiPoly::var_x();
        BiPoly ypoly;
        for (std::size_t k = 0; k < order; ++k)
            ypoly = ypoly + bipoly_pow(T, static_cast<unsigned>(k)) * yc[k];
        BiPoly acc;
        for (int j = p.degree_y(); j >= 0; --j) {
            BiPoly aj;
            for (const auto &[m, c] : p.terms())
                if (m.j == j) aj = aj + bipoly_pow(T + BiPoly(x0), static_cast<unsigned>(m.i)) * c;
            acc = acc * ypoly + aj;
        }
        for (std::size_t k = 0; k < order; ++k) CHECK(got[k] == acc.coeff(static_cast<int>(k), 0));
    }
}

#include "doctest.h"

#include "symfi/errors.hpp"
#include "symfi/flow.hpp"

using namespace symfi;

namespace {

BiPoly X() { return BiPoly::var_x(); }
BiPoly Y() { return BiPoly::var_y(); }
BiPoly C(long n) { return BiPoly(Rat(n)); }

// Independent oracle: order-by-order Picard iteration on y' = B/A.
// Completely separate from the production recurrence and Newton paths.
Series picard_oracle(const VectorField &vf, const BasePoint &base, std::size_t sigma) {
    Series y = Series::constant(base.x0, sigma, base.y0);
    for (std::size_t it = 0; it < sigma; ++it) {
        Series f = series_div(series_eval(vf.B(), y), series_eval(vf.A(), y));
        Series next = series_integrate(f);
        next[0] = base.y0;
        y = next;
    }
    return y;
}

const BiPoly ASQ = X() * X() + Rat(2) * X() * Y() + Y() * Y() - Rat(4) * X() + Rat(4) * Y() - C(2);
const BiPoly BSQ = X() * X() + Rat(2) * X() * Y() + Y() * Y() + Rat(4) * X() - Rat(4) * Y() - C(2);

} // namespace

TEST_CASE("flow jet trivial fields") {
    // A=1, B=1: y = y0 + t, y1 = 1, y2 = y3 = 0
    VectorField vf(C(1), C(1));
    FlowJet jet = flow_jet(vf, {Rat(0), Rat(0)}, 2, 3);
    CHECK(jet.sigma == flow_sigma(2, 3));
    CHECK(jet.y[0] == Rat(0));
    CHECK(jet.y[1] == Rat(1));
    for (std::size_t k = 2; k < jet.sigma; ++k) CHECK(jet.y[k] == Rat(0));
    CHECK(jet.y1[0] == Rat(1));
    for (std::size_t k = 1; k < jet.sigma; ++k) CHECK(jet.y1[k] == Rat(0));
    CHECK(jet.y2.is_zero());
    CHECK(jet.y3.is_zero());
    CHECK(verify_jet(vf, jet));
}

TEST_CASE("flow jet linear field: y' = y") {
    // A=1, B=y at (0,1): y = e^t, y1 = e^t
    VectorField vf(C(1), Y());
    FlowJet jet = flow_jet(vf, {Rat(0), Rat(1)}, 3, 1);
    Rat fact(1);
    for (std::size_t k = 0; k < jet.sigma; ++k) {
        if (k > 0) fact *= Rat(static_cast<long>(k));
        CHECK(jet.y[k] == Rat(1) / fact);
        CHECK(jet.y1[k] == Rat(1) / fact);
    }
    CHECK(verify_jet(vf, jet));
}

TEST_CASE("flow jet matches Picard oracle on the symmetric quadratic field") {
    VectorField vf(ASQ, BSQ);
    BasePoint base{Rat(1), Rat(8)};
    FlowJet jet = flow_jet(vf, base, 3, 3);
    CHECK(jet.y[0] == Rat(8));
    // first coefficient is B(1,8)/A(1,8) = 51/107
    CHECK(vf.A().eval(Rat(1), Rat(8)) == Rat(107));
    CHECK(vf.B().eval(Rat(1), Rat(8)) == Rat(51));
    CHECK(jet.y[1] == Rat(51, 107));

    Series oracle = picard_oracle(vf, base, jet.sigma);
    for (std::size_t k = 0; k < jet.sigma; ++k) CHECK(jet.y[k] == oracle[k]);
    CHECK(verify_jet(vf, jet));
}

TEST_CASE("newton solver agrees with the recurrence") {
    VectorField vf(ASQ, BSQ);
    BasePoint base{Rat(1), Rat(8)};
    FlowJet a = flow_jet(vf, base, 2, 3, FlowSolver::Recurrence);
    FlowJet b = flow_jet(vf, base, 2, 3, FlowSolver::Newton);
    CHECK(a.y == b.y);
    CHECK(a.y1 == b.y1);
    CHECK(a.y2 == b.y2);
    CHECK(a.y3 == b.y3);
    CHECK(verify_jet(vf, b));
}

TEST_CASE("verify_jet rejects corrupted jets") {
    VectorField vf(ASQ, BSQ);
    FlowJet jet = flow_jet(vf, {Rat(1), Rat(8)}, 2, 2);
    CHECK(verify_jet(vf, jet));
    FlowJet bad = jet;
    bad.y1[0] = Rat(2); // violates y1(x0) = 1
    CHECK_FALSE(verify_jet(vf, bad));
    FlowJet bad2 = jet;
    bad2.y2[3] += Rat(1, 7);
    CHECK_FALSE(verify_jet(vf, bad2));
}

TEST_CASE("grid consistency: lower order jet is a truncation") {
    VectorField vf(ASQ, BSQ);
    BasePoint base{Rat(2), Rat(-3)};
    FlowJet big = flow_jet(vf, base, 4, 2);
    FlowJet small = flow_jet(vf, base, 2, 2);
    for (std::size_t k = 0; k < small.sigma; ++k) {
        CHECK(small.y[k] == big.y[k]);
        CHECK(small.y1[k] == big.y1[k]);
        CHECK(small.y2[k] == big.y2[k]);
    }
    // determinism: identical inputs give identical jets
    FlowJet again = flow_jet(vf, base, 4, 2);
    CHECK(again.y == big.y);
    CHECK(again.y2 == big.y2);
}

TEST_CASE("base point on A is rejected") {
    VectorField vf(X(), -Y());
    CHECK_THROWS_AS(flow_jet(vf, {Rat(0), Rat(5)}, 2, 0), base_point_on_A);
}

#include "doctest.h"

#include "symfi/errors.hpp"
#include "symfi/extactic.hpp"

using namespace symfi;

namespace {

BiPoly X() { return BiPoly::var_x(); }
BiPoly Y() { return BiPoly::var_y(); }
BiPoly C(long n) { return BiPoly(Rat(n)); }

const BiPoly ASQ = X() * X() + Rat(2) * X() * Y() + Y() * Y() - Rat(4) * X() + Rat(4) * Y() - C(2);
const BiPoly BSQ = X() * X() + Rat(2) * X() * Y() + Y() * Y() + Rat(4) * X() - Rat(4) * Y() - C(2);

KernelElement make_el(int r, int k, int N, BiPoly P, BiPoly Q, BiPoly R) {
    KernelElement e;
    e.r = r;
    e.k = k;
    e.N = N;
    e.P = std::move(P);
    e.Q = std::move(Q);
    e.R = std::move(R);
    e.wdeg = weighted_degree(e);
    return e;
}

} // namespace

TEST_CASE("weighted_degree table") {
    CHECK(make_el(1, 1, 3, X() * X(), bipoly_pow(Y(), 3), BiPoly()).wdeg == 6);
    CHECK(make_el(0, 1, 2, X() * Y() - C(2), BiPoly(), BiPoly()).wdeg == 2);
    CHECK(make_el(2, 1, 1, C(1), BiPoly(), X()).wdeg == 4);
}

TEST_CASE("build_hp_instance layouts") {
    VectorField vf(ASQ, BSQ);
    BasePoint base{Rat(1), Rat(8)};

    SUBCASE("r=0, N=1: f = (1, y), s = (0,1)") {
        FlowJet jet = flow_jet(vf, base, 1, 0);
        HPInstance inst = build_hp_instance(jet, 1, 0, 1);
        REQUIRE(inst.f_list.size() == 2);
        CHECK(inst.shifts == std::vector<int>{0, 1});
        CHECK(inst.f_list[0][0] == Rat(1));
        CHECK(inst.f_list[1][0] == Rat(8));
        CHECK(inst.sigma == 3);
    }
    SUBCASE("r=1, k=2, N=1: f = (1, y, y1^2, y1^2 y), s = (0,1,2,3)") {
        FlowJet jet = flow_jet(vf, base, 1, 1);
        HPInstance inst = build_hp_instance(jet, 1, 1, 2);
        REQUIRE(inst.f_list.size() == 4);
        CHECK(inst.shifts == std::vector<int>{0, 1, 2, 3});
        // y1^2 has constant term 1; y1^2*y has constant term y0
        CHECK(inst.f_list[2][0] == Rat(1));
        CHECK(inst.f_list[3][0] == Rat(8));
        Series y1sq = series_mul(jet.y1.truncate(inst.sigma), jet.y1.truncate(inst.sigma));
        CHECK(inst.f_list[2] == y1sq);
    }
    SUBCASE("r=2, N=1 blocks are (y1, y1^2, y2)") {
        FlowJet jet = flow_jet(vf, base, 1, 2);
        HPInstance inst = build_hp_instance(jet, 1, 2, 1);
        REQUIRE(inst.f_list.size() == 6);
        CHECK(inst.block_base == std::vector<std::size_t>{0, 2, 4});
        CHECK(inst.f_list[0][0] == Rat(1)); // y1
        CHECK(inst.f_list[2][0] == Rat(1)); // y1^2
        CHECK(inst.f_list[4][0] == Rat(0)); // y2
        CHECK(inst.sigma == flow_sigma(1, 2));
    }
    SUBCASE("too shallow jet is rejected") {
        FlowJet jet = flow_jet(vf, base, 2, 1);
        CHECK_THROWS_AS(build_hp_instance(jet, 2, 2, 1), jet_too_shallow);
        CHECK_THROWS_AS(build_hp_instance(jet, 3, 1, 1), jet_too_shallow);
    }
}

TEST_CASE("kernel for A=x, B=-y at (1,2): trajectory xy=2") {
    VectorField vf(X(), -Y());
    BasePoint base{Rat(1), Rat(2)};
    FlowJet jet = flow_jet(vf, base, 2, 0);
    HPInstance inst = build_hp_instance(jet, 2, 0, 1);
    auto el = kernel_element(inst);
    REQUIRE(el.has_value());
    CHECK(el->r == 0);
    CHECK(proportional(el->P, X() * Y() - C(2)));
    CHECK(el->wdeg == 2);
    CHECK(semantic_series(*el, jet).is_zero());

    auto basis = brute_force_kernel(vf, base, 2, 0, 1);
    CHECK(basis.size() == 1);
    CHECK(proportional(basis[0].P, X() * Y() - C(2)));
}

TEST_CASE("kernel for A=1, B=1, N=1, r=0: line x - y") {
    VectorField vf(C(1), C(1));
    BasePoint base{Rat(3), Rat(-2)};
    auto basis = brute_force_kernel(vf, base, 1, 0, 1);
    REQUIRE(basis.size() == 1);
    CHECK(proportional(basis[0].P, X() - Y() - C(5)));

    FlowJet jet = flow_jet(vf, base, 1, 0);
    auto el = kernel_element(build_hp_instance(jet, 1, 0, 1));
    REQUIRE(el.has_value());
    CHECK(proportional(el->P, X() - Y() - C(5)));
}

TEST_CASE("symmetric quadratic darbouxian kernel at (1,8)") {
    VectorField vf(ASQ, BSQ);
    BasePoint base{Rat(1), Rat(8)};

    SUBCASE("N=2 kernel is trivial") {
        FlowJet jet = flow_jet(vf, base, 2, 1);
        auto el = kernel_element(build_hp_instance(jet, 2, 1, 1));
        CHECK_FALSE(el.has_value());
    }
    SUBCASE("N=3 yields P/Q = -14 A / (11 (x-y)(x^2+2xy+y^2-2))") {
        FlowJet jet = flow_jet(vf, base, 3, 1);
        KernelStats stats;
        auto el = kernel_element(build_hp_instance(jet, 3, 1, 1), {}, &stats);
        REQUIRE(el.has_value());
        CHECK_FALSE(el->P.is_zero());
        CHECK_FALSE(el->Q.is_zero());
        // the kernel pair is (U, -cW) with c = F(x0,y0), so the ratio
        // determines F only up to one overall scalar
        BiPoly expP = Rat(-14) * ASQ;
        BiPoly expQ = Rat(11) * (X() - Y()) * (X() * X() + Rat(2) * X() * Y() + Y() * Y() - C(2));
        CHECK(proportional(RatFunc(el->P, el->Q), RatFunc(expP, expQ)));
        CHECK(semantic_series(*el, jet).is_zero());

        // minimality against the oracle basis
        auto basis = brute_force_kernel(vf, base, 3, 1, 1);
        REQUIRE(!basis.empty());
        long minw = basis[0].wdeg;
        for (const auto &b : basis) minw = std::min(minw, b.wdeg);
        CHECK(el->wdeg == minw);
    }
}

TEST_CASE("all kernel modes agree on the symmetric quadratic field") {
    VectorField vf(ASQ, BSQ);
    BasePoint base{Rat(1), Rat(8)};
    FlowJet jet = flow_jet(vf, base, 3, 1);
    HPInstance inst = build_hp_instance(jet, 3, 1, 1);

    KernelOptions dense;
    dense.mode = KernelMode::DenseExact;
    KernelOptions modular;
    modular.mode = KernelMode::Modular;
    KernelOptions structured;
    structured.mode = KernelMode::Structured;

    auto e1 = kernel_element(inst, dense);
    auto e2 = kernel_element(inst, modular);
    auto e3 = kernel_element(inst, structured);
    REQUIRE(e1.has_value());
    REQUIRE(e2.has_value());
    REQUIRE(e3.has_value());
    CHECK(e1->P == e2->P);
    CHECK(e1->Q == e2->Q);
    CHECK(e1->wdeg == e2->wdeg);
    CHECK(e1->wdeg == e3->wdeg);
    CHECK(proportional(RatFunc(e1->P, e1->Q), RatFunc(e3->P, e3->Q)));
    CHECK(semantic_series(*e3, jet).is_zero());
}

TEST_CASE("generic quadratic field has empty r=2 kernel at N=1") {
    // random quadratic field of the corpus: no symbolic first integral
    BiPoly A = Rat(2) * X() * X() + X() * Y() - Rat(2) * Y() * Y() - C(1);
    BiPoly B = Rat(2) * X() * X() - Rat(2) * Y() * Y() + Y() - C(3);
    VectorField vf(A, B);
    BasePoint base{Rat(2), Rat(3)};
    auto basis = brute_force_kernel(vf, base, 1, 2, 1);
    CHECK(basis.empty());
    FlowJet jet = flow_jet(vf, base, 1, 2);
    CHECK_FALSE(kernel_element(build_hp_instance(jet, 1, 2, 1)).has_value());
}

TEST_CASE("contact order extension: kernel elements vanish beyond sigma") {
    // realizes the truncation-order rule: order dim V_r forces infinite contact
    VectorField vf(ASQ, BSQ);
    BasePoint base{Rat(1), Rat(8)};
    FlowJet jet = flow_jet(vf, base, 3, 1);
    auto el = kernel_element(build_hp_instance(jet, 3, 1, 1));
    REQUIRE(el.has_value());
    std::size_t sigma = flow_sigma(3, 1);
    FlowJet longer = flow_jet_with_order(vf, base, 3, 1, sigma + 10);
    KernelElement ext = *el;
    Series s = semantic_series(ext, longer);
    bool all_zero = true;
    for (std::size_t i = 0; i < sigma + 10 && all_zero; ++i) all_zero = is_zero(s[i]);
    CHECK(all_zero);
}

TEST_CASE("kernel dimension is stable across admissible base points") {
    VectorField vf(ASQ, BSQ);
    Prng rng(99);
    int agree = 0, total = 0;
    long ref = -1;
    for (int t = 0; t < 12; ++t) {
        Rat x0(rng.uniform(-20, 20)), y0(rng.uniform(-20, 20));
        if (is_zero(vf.A().eval(x0, y0))) continue;
        auto basis = brute_force_kernel(vf, {x0, y0}, 2, 0, 1);
        long dim = static_cast<long>(basis.size());
        if (ref < 0) ref = dim;
        agree += (dim == ref) ? 1 : 0;
        ++total;
    }
    REQUIRE(total >= 10);
    CHECK(agree * 100 >= total * 95);
}

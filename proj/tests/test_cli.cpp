#include "doctest.h"

#include "symfi/corpus.hpp"
#include "symfi/errors.hpp"
#include "symfi/parse.hpp"
#include "symfi/report.hpp"

using namespace symfi;

namespace {
BiPoly X() { return BiPoly::var_x(); }
BiPoly Y() { return BiPoly::var_y(); }
BiPoly C(long n) { return BiPoly(Rat(n)); }
} // namespace

TEST_CASE("parse_poly grammar") {
    BiPoly asq = parse_poly("x^2+2*x*y+y^2-4*x+4*y-2");
    BiPoly expected = X() * X() + Rat(2) * X() * Y() + Y() * Y() - Rat(4) * X() + Rat(4) * Y() - C(2);
    CHECK(asq == expected);
    CHECK(parse_poly("0").is_zero());
    CHECK(parse_poly("  ( x + y ) ^ 2 ") == (X() + Y()) * (X() + Y()));
    CHECK(parse_poly("1/2*x-3/4") == Rat(1, 2) * X() - BiPoly(Rat(3, 4)));
    CHECK(parse_poly("-x^2") == -(X() * X()));
    CHECK(parse_poly("-(9*x^2+36*x+17)*y^3-3*x*y^2") ==
          -((Rat(9) * X() * X() + Rat(36) * X() + C(17)) * bipoly_pow(Y(), 3)) -
              Rat(3) * X() * Y() * Y());

    CHECK_THROWS_AS(parse_poly("x^(-1)"), negative_exponent);
    CHECK_THROWS_AS(parse_poly("z+1"), unknown_variable);
    CHECK_THROWS_AS(parse_poly("x++"), syntax_error);
    CHECK_THROWS_AS(parse_poly("x y"), syntax_error); // implicit multiplication rejected
    CHECK_THROWS_AS(parse_poly(""), syntax_error);
}

TEST_CASE("parse round trip is a fixed point") {
    Prng rng(777);
    for (int t = 0; t < 20; ++t) {
        BiPoly p;
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; i + j <= 3; ++j)
                if (rng.next() % 2 == 0)
                    p.set_coeff(i, j, rat_of(rng.uniform(-9, 9), 1 + static_cast<long>(rng.next() % 4)));
        std::string s = p.to_string();
        CHECK(parse_poly(s) == p);
        CHECK(parse_poly(parse_poly(s).to_string()) == p);
    }
}

TEST_CASE("parse_field_spec") {
    auto [A, B] = parse_field_spec("A = x; B = -y");
    CHECK(A == X());
    CHECK(B == -Y());
    auto [A2, B2] = parse_field_spec("x+y; x-y");
    CHECK(A2 == X() + Y());
    CHECK(B2 == X() - Y());
}

TEST_CASE("report JSON round trip") {
    VectorField vf(parse_poly("x"), parse_poly("-y"));
    Query q{vf, 2, {FIClassKind::Rational, 1}, BasePoint{Rat(1), Rat(2)}, 0, false, {}};
    DriverResult res = compute_first_integral(q);
    REQUIRE(res.outcome.kind == Outcome::Kind::Equation);
    Report rep = Report::from_result(res, std::nullopt, false);
    Report back = report_from_json(rep.to_json());
    CHECK(reports_equal(rep, back));
    // text and JSON carry the same mathematical content
    CHECK(rep.to_text().find("status: equation") != std::string::npos);
    CHECK(rep.to_text().find(res.outcome.eq->F.to_string()) != std::string::npos);
}

TEST_CASE("mu-lambda family generator reduces the gcd") {
    auto [A, B] = mu_lambda_field(1, 0);
    VectorField vf(A, B); // would throw if the gcd were not reduced
    CHECK(vf.d() == 1);
    auto [A2, B2] = mu_lambda_field(0, 1);
    VectorField vf2(A2, B2);
    CHECK(vf2.d() == 1);
    auto [A3, B3] = mu_lambda_field(1, 1);
    VectorField vf3(A3, B3);
    CHECK(vf3.d() == 3);
}

TEST_CASE("corpus loads and contains the bundled systems") {
    auto cases = load_corpus(default_corpus_path());
    REQUIRE(cases.size() >= 12);
    bool has_sq = false, has43 = false, hasml = false;
    for (const auto &c : cases) {
        if (c.id == "symmetric-quadratic") {
            has_sq = true;
            CHECK(c.runs.size() == 2);
        }
        if (c.id == "kamke-43") has43 = true;
        if (c.id == "mu-lambda(2,1)") {
            hasml = true;
            CHECK(c.scans.size() == 4);
        }
    }
    CHECK(has_sq);
    CHECK(has43);
    CHECK(hasml);
}

TEST_CASE("corpus runner: quick subset") {
    auto cases = load_corpus(default_corpus_path());
    // matches both the base case (2 runs) and its lambda=100 variant (1 run)
    auto results = run_corpus(cases, "symmetric-quadratic", 2, StrategyFlags{});
    REQUIRE(results.size() == 3);
    for (const auto &r : results) CHECK(r.pass);
}

TEST_CASE("bench scan on the smallest family entries") {
    auto rows = bench_scan("generic", {FIClassKind::Liouvillian, 1}, 2, {}, 2, StrategyFlags{});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].minimal_N == -1);
    CHECK(rows[0].status == "none");
}

#ifndef SYMFI_BUILDERS_HPP
#define SYMFI_BUILDERS_HPP

#include "symfi/flow.hpp"
#include "symfi/ratfunc.hpp"
#include "symfi/vector_field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace symfi {

enum class FIClassKind { Rational, Darbouxian, Liouvillian, Riccati };

struct IntegralClass {
    FIClassKind kind = FIClassKind::Rational;
    int k = 1; // meaningful for Darbouxian only
    friend bool operator==(const IntegralClass &a, const IntegralClass &b) {
        return a.kind == b.kind && (a.kind != FIClassKind::Darbouxian || a.k == b.k);
    }
};

// rank in the class ordering Rational < k-Darbouxian < Liouvillian < Riccati
int class_rank(const IntegralClass &c);
std::string class_name(const IntegralClass &c);

// The canonical defining equation. For Darbouxian(k), F stores G = F^k, i.e.
// the equation reads  dF/dy = (P/Q)^{1/k}  with G = P/Q.
struct CanonicalEquation {
    IntegralClass cls;
    RatFunc F;
    int degree = 0;
};

CanonicalEquation make_equation(IntegralClass cls, RatFunc F);

enum class UnknownReason { None, PointOnA, NoVanishingFactor, SingletonBasis, NoAdmissiblePoint };
std::string reason_name(UnknownReason r);

struct Outcome {
    enum class Kind { Equation, NoneFound, Unknown } kind = Kind::Unknown;
    std::optional<CanonicalEquation> eq;
    UnknownReason reason = UnknownReason::None;

    static Outcome equation(CanonicalEquation e) {
        Outcome o;
        o.kind = Kind::Equation;
        o.eq = std::move(e);
        return o;
    }
    static Outcome none() {
        Outcome o;
        o.kind = Kind::NoneFound;
        return o;
    }
    static Outcome unknown(UnknownReason r) {
        Outcome o;
        o.kind = Kind::Unknown;
        o.reason = r;
        return o;
    }
};

// exact identity test of the class conditions:
//   Rational:    D0(F) = 0, F not constant
//   Darbouxian:  D0(G) = -k A G dy(B/A), G != 0        (G = F^k)
//   Liouvillian: D0(F) = -A dy(B/A) F - A dy^2(B/A)
//   Riccati:     D0(F) = -2 A dy(B/A) F + 1/2 A dy^3(B/A)
bool condition_check(const VectorField &vf, const CanonicalEquation &eq);

// series counterpart: the class invariant composed with the jet is constant
// at order sigma (checked denominator-free via its derivative)
bool casale_constancy_check(const VectorField &vf, const CanonicalEquation &eq, const FlowJet &jet);

enum class CofactorMode { Dense, Slice };

// basis of { Q : deg Q <= degbound, D0(Q) = Omega Q }, returned in canonical
// reduced row echelon form, sorted by decreasing graded-lex leading monomial
std::vector<BiPoly> cofactor_solve(const VectorField &vf, const BiPoly &omega, int degbound,
                                   CofactorMode mode = CofactorMode::Dense);

struct BuildOptions {
    CofactorMode cofactor = CofactorMode::Dense;
};

Outcome build_rational(const VectorField &vf, const BiPoly &P, const BasePoint &base,
                       std::vector<std::string> *chain = nullptr, const BuildOptions &opts = {});
Outcome build_darbouxian(const VectorField &vf, const BiPoly &P, const BiPoly &Q,
                         const BasePoint &base, int k, std::vector<std::string> *chain = nullptr,
                         const BuildOptions &opts = {});
Outcome build_liouvillian(const VectorField &vf, const BiPoly &P, const BiPoly &Q, const BiPoly &R,
                          const BasePoint &base, std::vector<std::string> *chain = nullptr,
                          const BuildOptions &opts = {});
Outcome build_riccati(const VectorField &vf, const BiPoly &P, const BiPoly &Q, const BiPoly &R,
                      const BasePoint &base, std::vector<std::string> *chain = nullptr,
                      const BuildOptions &opts = {});

// bound B_r(d, N) on the degree of a minor of the specialized extactic matrix
Rat minor_degree_bound(int r, int d, int N);
// degree bound on the bad-point hypersurface of the probabilistic algorithm
Rat bad_point_bound(const IntegralClass &cls, int d, int N);

} // namespace symfi

#endif

#include "symfi/builders.hpp"

#include "symfi/errors.hpp"
#include "symfi/factor.hpp"

#include <algorithm>
#include <map>

namespace symfi {

int class_rank(const IntegralClass &c) {
    switch (c.kind) {
        case FIClassKind::Rational: return 0;
        case FIClassKind::Darbouxian: return 1;
        case FIClassKind::Liouvillian: return 2;
        case FIClassKind::Riccati: return 3;
    }
    return 3;
}

std::string class_name(const IntegralClass &c) {
    switch (c.kind) {
        case FIClassKind::Rational: return "rational";
        case FIClassKind::Darbouxian:
            return c.k == 1 ? "darbouxian" : (std::to_string(c.k) + "-darbouxian");
        case FIClassKind::Liouvillian: return "liouvillian";
        case FIClassKind::Riccati: return "riccati";
    }
    return "?";
}

std::string reason_name(UnknownReason r) {
    switch (r) {
        case UnknownReason::None: return "";
        case UnknownReason::PointOnA: return "point-on-A";
        case UnknownReason::NoVanishingFactor: return "no-vanishing-factor";
        case UnknownReason::SingletonBasis: return "singleton-basis";
        case UnknownReason::NoAdmissiblePoint: return "no-admissible-point";
    }
    return "";
}

CanonicalEquation make_equation(IntegralClass cls, RatFunc F) {
    CanonicalEquation eq;
    eq.cls = cls;
    eq.degree = std::max(F.num().degree(), F.den().degree());
    eq.F = std::move(F);
    return eq;
}

bool condition_check(const VectorField &vf, const CanonicalEquation &eq) {
    const RatFunc &F = eq.F;
    RatFunc A(vf.A());
    switch (eq.cls.kind) {
        case FIClassKind::Rational:
            return !F.is_constant() && apply_D0(vf, F).is_zero();
        case FIClassKind::Darbouxian: {
            if (F.is_zero()) return false;
            RatFunc lhs = apply_D0(vf, F);
            RatFunc rhs = -(A * F * dy_BA(vf, 1) * Rat(eq.cls.k));
            return lhs == rhs;
        }
        case FIClassKind::Liouvillian: {
            RatFunc lhs = apply_D0(vf, F);
            RatFunc rhs = -(A * dy_BA(vf, 1) * F) - A * dy_BA(vf, 2);
            return lhs == rhs;
        }
        case FIClassKind::Riccati: {
            RatFunc lhs = apply_D0(vf, F);
            RatFunc rhs = -(A * dy_BA(vf, 1) * F * Rat(2)) + A * dy_BA(vf, 3) * Rat(1, 2);
            return lhs == rhs;
        }
    }
    return false;
}

bool casale_constancy_check(const VectorField &vf, const CanonicalEquation &eq, const FlowJet &jet) {
    (void)vf;
    const std::size_t sigma = jet.sigma;
    Series U = series_eval(eq.F.num(), jet.y);
    Series W = series_eval(eq.F.den(), jet.y);
    Series Up = series_derivative(U), Wp = series_derivative(W);
    auto vanishes = [&](const Series &s) {
        for (std::size_t i = 0; i + 1 < sigma; ++i)
            if (!is_zero(s[i])) return false;
        return true;
    };
    switch (eq.cls.kind) {
        case FIClassKind::Rational:
            // d/dt (U/W) = 0  <=>  U' W - U W' = 0
            return vanishes(series_mul(Up, W) - series_mul(U, Wp));
        case FIClassKind::Darbouxian: {
            // d/dt (G y1^k) = 0, G = U/W: (U'W - UW') y1 + k U W y1' = 0
            if (jet.r < 1) throw jet_too_shallow();
            Series y1 = jet.y1, y1p = series_derivative(jet.y1);
            Series lhs = series_mul(series_mul(Up, W) - series_mul(U, Wp), y1) +
                         series_mul(series_mul(U, W), y1p) * Rat(eq.cls.k);
            return vanishes(lhs);
        }
        case FIClassKind::Liouvillian: {
            // d/dt (F y1 + y2/y1) cleared by W^2 y1^2
            if (jet.r < 2) throw jet_too_shallow();
            Series y1 = jet.y1, y2 = jet.y2;
            Series y1p = series_derivative(y1), y2p = series_derivative(y2);
            Series y1sq = series_mul(y1, y1);
            Series t1 = series_mul(series_mul(Up, W) - series_mul(U, Wp), series_mul(y1sq, y1));
            Series t2 = series_mul(series_mul(U, W), series_mul(y1p, y1sq));
            Series t3 = series_mul(series_mul(W, W), series_mul(y2p, y1) - series_mul(y2, y1p));
            return vanishes(t1 + t2 + t3);
        }
        case FIClassKind::Riccati: {
            // d/dt (4F y1^2 - 2 y3/y1 + 3 y2^2/y1^2) cleared by W^2 y1^4 / 2
            if (jet.r < 3) throw jet_too_shallow();
            Series y1 = jet.y1, y2 = jet.y2, y3 = jet.y3;
            Series y1p = series_derivative(y1), y2p = series_derivative(y2), y3p = series_derivative(y3);
            Series y1sq = series_mul(y1, y1);
            Series y14 = series_mul(y1sq, y1sq);
            Series W2 = series_mul(W, W);
            Series t1 = series_mul(series_mul(Up, W) - series_mul(U, Wp), series_mul(y14, y1sq)) * Rat(4);
            Series t2 = series_mul(series_mul(U, W), series_mul(series_mul(y14, y1), y1p)) * Rat(8);
            Series t3 = series_mul(W2, series_mul(y1sq, series_mul(y3p, y1) - series_mul(y3, y1p))) * Rat(-2);
            Series t4 = series_mul(W2, series_mul(series_mul(y2, y2p), y1sq) -
                                           series_mul(series_mul(y2, y2), series_mul(y1, y1p))) *
                        Rat(6);
            return vanishes(t1 + t2 + t3 + t4);
        }
    }
    return false;
}

namespace {

// monomials of total degree <= deg in ascending grlex order
std::vector<Mono> monomials_upto(int deg) {
    std::vector<Mono> out;
    for (int t = 0; t <= deg; ++t)
        for (int i = 0; i <= t; ++i) out.push_back(Mono{i, t - i});
    return out;
}

// canonical reduced row echelon form of a list of polynomials, viewed as
// vectors over the grlex-descending monomial coordinates
std::vector<BiPoly> rref_polys(std::vector<BiPoly> basis) {
    std::vector<BiPoly> rows;
    for (auto &b : basis)
        if (!b.is_zero()) rows.push_back(b);
    std::vector<BiPoly> done;
    while (!rows.empty()) {
        // pick the row with the largest leading monomial; normalize; eliminate
        std::size_t best = 0;
        MonoLess less;
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (less(rows[best].leading_monomial(), rows[i].leading_monomial())) best = i;
        BiPoly pivot = rows[best].monic();
        Mono lm = pivot.leading_monomial();
        rows.erase(rows.begin() + static_cast<long>(best));
        for (auto &r : rows) {
            Rat c = r.coeff(lm.i, lm.j);
            if (!is_zero(c)) r = r - pivot * c;
        }
        rows.erase(std::remove_if(rows.begin(), rows.end(), [](const BiPoly &r) { return r.is_zero(); }),
                   rows.end());
        for (auto &d : done) {
            Rat c = d.coeff(lm.i, lm.j);
            if (!is_zero(c)) d = d - pivot * c;
        }
        done.push_back(pivot);
    }
    // descending leading monomials by construction order; re-sort to be safe
    std::sort(done.begin(), done.end(), [](const BiPoly &a, const BiPoly &b) {
        MonoLess less;
        return less(b.leading_monomial(), a.leading_monomial());
    });
    return done;
}

std::vector<BiPoly> cofactor_solve_dense(const VectorField &vf, const BiPoly &omega, int degbound) {
    auto unknowns = monomials_upto(degbound);
    int outdeg = degbound + std::max(vf.d() - 1, omega.degree());
    auto outmono = monomials_upto(std::max(outdeg, 0));
    std::map<std::pair<int, int>, std::size_t> row_of;
    for (std::size_t i = 0; i < outmono.size(); ++i) row_of[{outmono[i].i, outmono[i].j}] = i;

    std::vector<std::vector<Rat>> kernel_combos;
    // incremental column elimination (first-dependent style, full kernel)
    struct Pivot {
        std::vector<Rat> col;
        std::size_t row;
        std::vector<Rat> combo;
    };
    std::vector<Pivot> pivots;
    std::size_t pushed = 0;
    for (const auto &mo : unknowns) {
        BiPoly q = BiPoly::monomial(Rat(1), mo.i, mo.j);
        BiPoly img = apply_D0(vf, q) - omega * q;
        std::vector<Rat> col(outmono.size(), Rat(0));
        for (const auto &[m, c] : img.terms()) col[row_of.at({m.i, m.j})] = c;
        std::vector<Rat> combo(pushed + 1, Rat(0));
        combo[pushed] = Rat(1);
        for (const auto &pv : pivots) {
            const Rat &c = col[pv.row];
            if (is_zero(c)) continue;
            Rat factor = c / pv.col[pv.row];
            for (std::size_t i = 0; i < col.size(); ++i)
                if (!is_zero(pv.col[i])) col[i] -= factor * pv.col[i];
            for (std::size_t i = 0; i < pv.combo.size(); ++i)
                if (!is_zero(pv.combo[i])) combo[i] -= factor * pv.combo[i];
        }
        std::size_t row = col.size();
        for (std::size_t i = 0; i < col.size(); ++i)
            if (!is_zero(col[i])) {
                row = i;
                break;
            }
        ++pushed;
        if (row == col.size())
            kernel_combos.push_back(std::move(combo));
        else
            pivots.push_back(Pivot{std::move(col), row, std::move(combo)});
    }

    std::vector<BiPoly> basis;
    for (const auto &combo : kernel_combos) {
        BiPoly b;
        for (std::size_t i = 0; i < combo.size(); ++i)
            if (!is_zero(combo[i])) b.set_coeff(unknowns[i].i, unknowns[i].j, combo[i]);
        basis.push_back(std::move(b));
    }
    return rref_polys(std::move(basis));
}

// triangular mode: process homogeneous result slices from the top degree
// down, activating unknown slices as they enter; mirrors the per-slice
// recurrence obtained from the substitution y = z x
std::vector<BiPoly> cofactor_solve_slice(const VectorField &vf, const BiPoly &omega, int degbound) {
    int d = vf.d();
    int outdeg = degbound + std::max(d - 1, omega.degree());

    // solution space as a basis over the currently active unknown monomials
    std::vector<Mono> active;
    std::vector<std::vector<Rat>> space; // each vector: coefficients over `active`

    auto activate_slice = [&](int deg) {
        std::size_t old_dim = space.size();
        std::size_t old_n = active.size();
        std::vector<Mono> fresh;
        for (int i = deg; i >= 0; --i) fresh.push_back(Mono{i, deg - i});
        std::sort(fresh.begin(), fresh.end(), [](const Mono &a, const Mono &b) { return a.i < b.i; });
        for (const auto &m : fresh) active.push_back(m);
        for (auto &v : space) v.resize(active.size(), Rat(0));
        for (std::size_t f = 0; f < fresh.size(); ++f) {
            std::vector<Rat> v(active.size(), Rat(0));
            v[old_n + f] = Rat(1);
            space.push_back(std::move(v));
        }
        (void)old_dim;
    };

    // operator images of single monomials, cached
    auto image = [&](const Mono &m) {
        BiPoly q = BiPoly::monomial(Rat(1), m.i, m.j);
        return apply_D0(vf, q) - omega * q;
    };
    std::map<std::pair<int, int>, BiPoly> img_cache;
    auto image_of = [&](const Mono &m) -> const BiPoly & {
        auto key = std::make_pair(m.i, m.j);
        auto it = img_cache.find(key);
        if (it == img_cache.end()) it = img_cache.emplace(key, image(m)).first;
        return it->second;
    };

    int next_unknown_slice = degbound;
    for (int s = outdeg; s >= 0; --s) {
        // unknown slices participating in result slice s have degree >= s-d+1
        while (next_unknown_slice >= 0 && next_unknown_slice >= s - d + 1) {
            activate_slice(next_unknown_slice);
            --next_unknown_slice;
        }
        // later slices introduce fresh unknowns, so an empty space here only
        // skips this slice's equations (they cannot involve future unknowns)
        if (space.empty()) continue;
        // constraint rows: coefficients of the degree-s slice of L(Q)
        std::vector<Mono> slice_monos;
        for (int i = s; i >= 0; --i) slice_monos.push_back(Mono{i, s - i});
        for (const auto &row_mono : slice_monos) {
            // a * v = 0 where a_j = coeff of row_mono in image(active_j)
            std::vector<Rat> a(active.size(), Rat(0));
            bool any = false;
            for (std::size_t j = 0; j < active.size(); ++j) {
                Rat c = image_of(active[j]).coeff(row_mono.i, row_mono.j);
                if (!is_zero(c)) {
                    a[j] = c;
                    any = true;
                }
            }
            if (!any) continue;
            // evaluate on the basis and eliminate one dimension if violated
            std::vector<Rat> vals(space.size(), Rat(0));
            std::size_t piv = space.size();
            for (std::size_t v = 0; v < space.size(); ++v) {
                Rat acc(0);
                for (std::size_t j = 0; j < active.size(); ++j)
                    if (!is_zero(space[v][j]) && !is_zero(a[j])) acc += space[v][j] * a[j];
                vals[v] = acc;
                if (piv == space.size() && !is_zero(acc)) piv = v;
            }
            if (piv == space.size()) continue;
            for (std::size_t v = 0; v < space.size(); ++v) {
                if (v == piv || is_zero(vals[v])) continue;
                Rat factor = vals[v] / vals[piv];
                for (std::size_t j = 0; j < active.size(); ++j)
                    space[v][j] -= factor * space[piv][j];
            }
            space.erase(space.begin() + static_cast<long>(piv));
            if (space.empty()) break;
        }
    }

    std::vector<BiPoly> basis;
    for (const auto &v : space) {
        BiPoly b;
        for (std::size_t j = 0; j < active.size(); ++j)
            if (!is_zero(v[j])) b.set_coeff(active[j].i, active[j].j, v[j]);
        if (!b.is_zero()) basis.push_back(std::move(b));
    }
    return rref_polys(std::move(basis));
}

} // namespace

std::vector<BiPoly> cofactor_solve(const VectorField &vf, const BiPoly &omega, int degbound,
                                   CofactorMode mode) {
    if (omega.degree() > vf.d() - 1)
        throw error("cofactor_solve: deg Omega exceeds the cofactor degree bound d-1");
    if (degbound < 0) return {};
    return mode == CofactorMode::Dense ? cofactor_solve_dense(vf, omega, degbound)
                                       : cofactor_solve_slice(vf, omega, degbound);
}

Outcome build_rational(const VectorField &vf, const BiPoly &P, const BasePoint &base,
                       std::vector<std::string> *chain, const BuildOptions &opts) {
    if (chain) chain->push_back("rational");
    if (P.is_zero()) throw error("build_rational: P must be nonzero");

    BiPoly pred = squarefree_part(P);
    BiPoly g = bipoly_gcd(pred, apply_D0(vf, pred));
    if (g.is_constant()) return Outcome::unknown(UnknownReason::NoVanishingFactor);

    Factorization fac = factor_bivariate(g);
    const BiPoly *li = nullptr;
    for (const auto &[f, m] : fac.factors) {
        if (f.is_constant()) continue;
        if (is_zero(f.eval(base.x0, base.y0))) {
            li = &f;
            break;
        }
    }
    if (!li) return Outcome::unknown(UnknownReason::NoVanishingFactor);

    BiPoly d0li = apply_D0(vf, *li);
    if (!bipoly_divides(*li, d0li))
        throw error("build_rational: factor is not a Darboux polynomial");
    BiPoly omega = bipoly_divexact(d0li, *li);

    auto basis = cofactor_solve(vf, omega, li->degree(), opts.cofactor);
    if (basis.size() < 2) return Outcome::unknown(UnknownReason::SingletonBasis);
    // basis is sorted by decreasing leading monomial: b1 = first, b2 = last
    RatFunc F(basis.front(), basis.back());
    CanonicalEquation eq = make_equation({FIClassKind::Rational, 1}, F);
    if (!condition_check(vf, eq)) throw error("build_rational: identity check failed");
    return Outcome::equation(std::move(eq));
}

Outcome build_darbouxian(const VectorField &vf, const BiPoly &P, const BiPoly &Q,
                         const BasePoint &base, int k, std::vector<std::string> *chain,
                         const BuildOptions &opts) {
    if (P.is_zero() && Q.is_zero()) throw error("build_darbouxian: (P,Q) must be nonzero");
    if (chain) chain->push_back(k == 1 ? "darbouxian" : std::to_string(k) + "-darbouxian");
    if (P.is_zero()) return build_rational(vf, Q, base, chain, opts);
    if (Q.is_zero()) return build_rational(vf, P, base, chain, opts);

    // k R1 = A (Q D0(P) - P D0(Q)) + k P Q (A By - B Ay)
    BiPoly r1 = vf.A() * (Q * apply_D0(vf, P) - P * apply_D0(vf, Q)) +
                Rat(k) * P * Q * vf.dyBA_num(1);
    int n = std::max(P.degree(), Q.degree());
    if (r1.degree() > 2 * n + 2 * vf.d() - 1)
        throw error("build_darbouxian: escalation degree bound violated");
    if (r1.is_zero()) {
        CanonicalEquation eq = make_equation({FIClassKind::Darbouxian, k}, RatFunc(P, Q));
        if (!condition_check(vf, eq)) throw error("build_darbouxian: identity check failed");
        return Outcome::equation(std::move(eq));
    }
    return build_rational(vf, r1, base, chain, opts);
}

Outcome build_liouvillian(const VectorField &vf, const BiPoly &P, const BiPoly &Q, const BiPoly &R,
                          const BasePoint &base, std::vector<std::string> *chain,
                          const BuildOptions &opts) {
    if (P.is_zero() && Q.is_zero() && R.is_zero())
        throw error("build_liouvillian: (P,Q,R) must be nonzero");
    if (chain) chain->push_back("liouvillian");
    if (Q.is_zero()) return build_darbouxian(vf, P, R, base, 1, chain, opts);

    // P1 = A^2 Q^2 (D0(P/Q) + A (P/Q) dy(B/A) + A dy^2(B/A))
    //    = A^2 (Q D0(P) - P D0(Q)) + A P Q N1 + Q^2 N2
    const BiPoly &A = vf.A();
    BiPoly p1 = A * A * (Q * apply_D0(vf, P) - P * apply_D0(vf, Q)) +
                A * P * Q * vf.dyBA_num(1) + Q * Q * vf.dyBA_num(2);
    BiPoly q1 = A * A * (Q * apply_D0(vf, R) - R * apply_D0(vf, Q));
    int n = std::max({P.degree(), Q.degree(), R.degree()});
    if (std::max(p1.degree(), q1.degree()) > 2 * n + 3 * vf.d() - 1)
        throw error("build_liouvillian: escalation degree bound violated");
    if (p1.is_zero()) {
        CanonicalEquation eq = make_equation({FIClassKind::Liouvillian, 1}, RatFunc(P, Q));
        if (!condition_check(vf, eq)) throw error("build_liouvillian: identity check failed");
        return Outcome::equation(std::move(eq));
    }
    return build_darbouxian(vf, p1, q1, base, 1, chain, opts);
}

Outcome build_riccati(const VectorField &vf, const BiPoly &P, const BiPoly &Q, const BiPoly &R,
                      const BasePoint &base, std::vector<std::string> *chain,
                      const BuildOptions &opts) {
    if (P.is_zero() && Q.is_zero() && R.is_zero())
        throw error("build_riccati: (P,Q,R) must be nonzero");
    if (chain) chain->push_back("riccati");
    if (Q.is_zero()) return build_darbouxian(vf, Rat(4) * P, R, base, 2, chain, opts);

    // P1 = A^3 Q^2 (4 D0(P/Q) + 8 A (P/Q) dy(B/A) - 2 A dy^3(B/A))
    //    = 4 A^3 (Q D0(P) - P D0(Q)) + 8 A^2 P Q N1 - 2 Q^2 N3
    const BiPoly &A = vf.A();
    BiPoly a2 = A * A;
    BiPoly p1 = Rat(4) * a2 * A * (Q * apply_D0(vf, P) - P * apply_D0(vf, Q)) +
                Rat(8) * a2 * P * Q * vf.dyBA_num(1) - Rat(2) * Q * Q * vf.dyBA_num(3);
    BiPoly q1 = a2 * A * (Q * apply_D0(vf, R) - R * apply_D0(vf, Q));
    int n = std::max({P.degree(), Q.degree(), R.degree()});
    if (std::max(p1.degree(), q1.degree()) > 2 * n + 4 * vf.d() - 1)
        throw error("build_riccati: escalation degree bound violated");
    if (p1.is_zero()) {
        CanonicalEquation eq = make_equation({FIClassKind::Riccati, 1}, RatFunc(P, Q));
        if (!condition_check(vf, eq)) throw error("build_riccati: identity check failed");
        return Outcome::equation(std::move(eq));
    }
    return build_darbouxian(vf, p1, q1, base, 2, chain, opts);
}

Rat minor_degree_bound(int r, int d, int N) {
    Rat n(N), dd(d);
    Rat np1(N + 1), np2(N + 2);
    switch (r) {
        case 0:
            return n * np1 * np2 / 2 + (dd - 1) * (np1 * np1 * np2 * np2 - np1 * np2) / 8;
        case 1: {
            Rat l1 = np1 * np2;
            return n * l1 + (2 * dd - 1) * (l1 - 1) * l1 / 2;
        }
        case 2: {
            Rat l2 = Rat(3) * np1 * np2 / 2;
            return n * l2 + (3 * dd - 1) * (l2 - 1) * l2 / 2;
        }
        case 3: {
            Rat l2 = Rat(3) * np1 * np2 / 2;
            // the l in the linear term matches the stated closed form
            return n * l2 + (4 * dd - 1) * (l2 - 1) * l2 / 2;
        }
        default: throw error("minor_degree_bound: r must be in 0..3");
    }
}

Rat bad_point_bound(const IntegralClass &cls, int d, int N) {
    Rat dd(d), n(N);
    Rat spectrum = (dd * (dd + 1) / 2 + 5);
    Rat b0 = minor_degree_bound(0, d, N);
    Rat b1 = minor_degree_bound(1, d, N);
    switch (cls.kind) {
        case FIClassKind::Rational:
        case FIClassKind::Darbouxian:
            // D(d,N); also used as the safe over-approximation for Rational
            return dd + b0 + b1 + spectrum * (2 * n + 2 * dd - 1);
        case FIClassKind::Liouvillian:
            return dd + b0 + b1 + minor_degree_bound(2, d, N) + spectrum * (4 * n + 8 * dd - 3);
        case FIClassKind::Riccati:
            return dd + b0 + b1 + minor_degree_bound(3, d, N) + spectrum * (4 * n + 10 * dd - 3);
    }
    throw error("bad_point_bound: bad class");
}

} // namespace symfi

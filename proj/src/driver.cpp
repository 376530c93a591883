#include "symfi/driver.hpp"

#include "symfi/errors.hpp"

#include <algorithm>
#include <chrono>

namespace symfi {

namespace {

int class_r(const IntegralClass &c) {
    switch (c.kind) {
        case FIClassKind::Rational: return 0;
        case FIClassKind::Darbouxian: return 1;
        case FIClassKind::Liouvillian: return 2;
        case FIClassKind::Riccati: return 3;
    }
    return 0;
}

double ms_since(const std::chrono::steady_clock::time_point &t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

BasePoint choose_base_point(const VectorField &vf, std::uint64_t seed, long box_halfwidth) {
    Prng rng(seed ^ 0x73796d6669ULL);
    for (int draw = 0; draw < 1000; ++draw) {
        Rat x0(rng.uniform(-box_halfwidth, box_halfwidth));
        Rat y0(rng.uniform(-box_halfwidth, box_halfwidth));
        if (!is_zero(vf.A().eval(x0, y0))) return BasePoint{x0, y0};
    }
    throw no_admissible_point();
}

DriverResult compute_first_integral(const Query &q) {
    auto t0 = std::chrono::steady_clock::now();
    DriverResult res;
    const VectorField &vf = q.vf;
    int r = class_r(q.cls);
    int k = q.cls.kind == FIClassKind::Darbouxian ? q.cls.k : 1;
    if (q.N < 1) throw error("compute_first_integral: N must be >= 1");
    if (k < 1) throw error("compute_first_integral: k must be >= 1");

    BasePoint base{Rat(0), Rat(0)};
    if (q.base) {
        base = *q.base;
    } else {
        long hw = 999;
        if (q.flags.strict) {
            // box strictly larger than the bad-point bound
            Rat bound = bad_point_bound(q.cls, std::max(vf.d(), 1), q.N);
            Int need = bound.get_num() / bound.get_den() + 2;
            if (need > 999)
                hw = mpz_fits_slong_p(need.get_mpz_t()) ? mpz_get_si(need.get_mpz_t()) : 1000000000L;
        }
        base = choose_base_point(vf, q.seed, hw);
    }
    res.diag.point = base;

    if (is_zero(vf.A().eval(base.x0, base.y0))) {
        res.outcome = Outcome::unknown(UnknownReason::PointOnA);
        res.diag.reason = UnknownReason::PointOnA;
        res.diag.time_ms = ms_since(t0);
        return res;
    }

    FlowJet jet = flow_jet(vf, base, q.N, r, q.flags.solver);
    res.diag.sigma = jet.sigma;
    HPInstance inst = build_hp_instance(jet, q.N, r, k);

    KernelOptions kopts;
    kopts.mode = q.flags.kernel;
    KernelStats stats;
    auto kel = kernel_element(inst, kopts, &stats);
    res.diag.kernel_dim = stats.kernel_dim;
    res.diag.primes_used = stats.primes_used;
    res.diag.used_fallback = stats.used_fallback;

    if (!kel) {
        res.outcome = Outcome::none();
        res.diag.time_ms = ms_since(t0);
        return res;
    }
    res.diag.wdeg = kel->wdeg;

    BuildOptions bopts;
    bopts.cofactor = q.flags.cofactor;
    switch (q.cls.kind) {
        case FIClassKind::Rational:
            res.outcome = build_rational(vf, kel->P, base, &res.diag.chain, bopts);
            break;
        case FIClassKind::Darbouxian:
            res.outcome = build_darbouxian(vf, kel->P, kel->Q, base, k, &res.diag.chain, bopts);
            break;
        case FIClassKind::Liouvillian:
            res.outcome = build_liouvillian(vf, kel->P, kel->Q, kel->R, base, &res.diag.chain, bopts);
            break;
        case FIClassKind::Riccati:
            res.outcome = build_riccati(vf, kel->P, kel->Q, kel->R, base, &res.diag.chain, bopts);
            break;
    }
    if (res.outcome.kind == Outcome::Kind::Unknown) res.diag.reason = res.outcome.reason;
    res.diag.time_ms = ms_since(t0);
    return res;
}

DriverResult compute_deterministic(const Query &q) {
    auto t0 = std::chrono::steady_clock::now();
    const VectorField &vf = q.vf;
    // the bound formulas assume d >= 1; constant fields clamp to 1
    Rat bound = bad_point_bound(q.cls, std::max(vf.d(), 1), q.N);

    Rat c(0);
    long x0 = -1;
    DriverResult last;
    while (c <= bound + 1) {
        ++x0;
        // skip abscissas where A(x0, y) vanishes identically
        while (vf.A().eval_x(Rat(x0)).is_zero()) ++x0;
        // enumerate y0 = 0, 1, -1, 2, -2, ... deterministically
        Rat tried(0);
        long step = 0;
        while (tried <= bound + 1) {
            long y0 = step == 0 ? 0 : (step % 2 == 1 ? (step + 1) / 2 : -(step / 2));
            ++step;
            if (step > 4000000) break; // give up on this abscissa
            if (is_zero(vf.A().eval(Rat(x0), Rat(y0)))) continue;
            Query probe = q;
            probe.deterministic = false;
            probe.base = BasePoint{Rat(x0), Rat(y0)};
            DriverResult res = compute_first_integral(probe);
            if (res.outcome.kind == Outcome::Kind::NoneFound) {
                res.diag.time_ms = ms_since(t0);
                return res;
            }
            if (res.outcome.kind == Outcome::Kind::Equation) {
                res.diag.time_ms = ms_since(t0);
                return res;
            }
            last = res;
            tried += 1;
        }
        c += 1;
    }
    last.outcome = Outcome::none();
    last.diag.time_ms = ms_since(t0);
    return last;
}

} // namespace symfi

#ifndef SYMFI_DRIVER_HPP
#define SYMFI_DRIVER_HPP

#include "symfi/builders.hpp"
#include "symfi/extactic.hpp"

#include <cstdint>
#include <optional>

namespace symfi {

struct StrategyFlags {
    KernelMode kernel = KernelMode::Auto;
    CofactorMode cofactor = CofactorMode::Dense;
    FlowSolver solver = FlowSolver::Recurrence;
    bool strict = false; // widen the sampling box past the bad-point bound
};

struct Query {
    VectorField vf;
    int N = 1;
    IntegralClass cls;
    std::optional<BasePoint> base; // exactly one of base/seed governs the point
    std::uint64_t seed = 0;
    bool deterministic = false;
    StrategyFlags flags;
};

struct Diagnostics {
    std::size_t sigma = 0;
    long kernel_dim = -1;
    long wdeg = -1;
    std::vector<std::string> chain;
    UnknownReason reason = UnknownReason::None;
    double time_ms = 0.0;
    BasePoint point{Rat(0), Rat(0)};
    int primes_used = 0;
    bool used_fallback = false;
};

struct DriverResult {
    Outcome outcome;
    Diagnostics diag;
};

// integer point in the box with A(x0,y0) != 0, deterministic in the seed;
// at most 1000 draws, then NoAdmissiblePoint
BasePoint choose_base_point(const VectorField &vf, std::uint64_t seed, long box_halfwidth = 999);

// one run of the probabilistic algorithm of the requested class
DriverResult compute_first_integral(const Query &q);

// deterministic wrapper: enumerate base points until a non-Unknown outcome,
// bounded by the bad-point degree bound of the class
DriverResult compute_deterministic(const Query &q);

} // namespace symfi

#endif

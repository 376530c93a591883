#ifndef SYMFI_EXTACTIC_HPP
#define SYMFI_EXTACTIC_HPP

#include "symfi/flow.hpp"

#include <optional>
#include <vector>

namespace symfi {

// A nonzero element of the specialized extactic kernel, written on the class
// basis:
//   r=0:  P
//   r=1:  y1^k P + Q
//   r=2:  P y1^2 + Q y2 + R y1
//   r=3:  4P y1^4 + Q (3 y2^2 - 2 y3 y1) + R y1^2
struct KernelElement {
    int r = 0;
    int k = 1;
    int N = 0;
    BiPoly P, Q, R;
    long wdeg = 0;
};

// weights w(y1) = N+1, w(y2) = 2N+2, w(y3) = 3N+3
long weighted_degree(int r, int k, int N, const BiPoly &P, const BiPoly &Q, const BiPoly &R);
long weighted_degree(const KernelElement &e);

// Hermite-Pade data: the series list and shift vector of the kernel problem
//   sum_i p_i(x) f_i(x) = 0 mod (x-x0)^sigma
struct HPInstance {
    int r = 0;
    int k = 1;
    int N = 0;
    std::size_t sigma = 0;
    BasePoint base;
    std::vector<Series> f_list;
    std::vector<int> shifts;
    // block structure: f_list[block_base[b] + j] = block_b * y^j
    std::vector<std::size_t> block_base;
};

HPInstance build_hp_instance(const FlowJet &jet, int N, int r, int k);

enum class KernelMode { Auto, DenseExact, Modular, Structured };

struct KernelOptions {
    KernelMode mode = KernelMode::Auto;
    // Auto switches from the exact dense solve to the multi-prime path here
    std::size_t exact_sigma_limit = 64;
};

struct KernelStats {
    long kernel_dim = -1;     // dimension of the specialized kernel (diagnostic)
    int primes_used = 0;
    bool used_fallback = false;
};

// A nonzero kernel element of minimal weighted degree, or nullopt if the
// kernel is trivial. Deterministic: columns are processed by ascending
// weight (ties: f-list block order, then x-exponent) and the element
// returned is the expansion of the first dependent column, scaled so that
// column's coefficient is 1.
std::optional<KernelElement> kernel_element(const HPInstance &inst, const KernelOptions &opts = {},
                                            KernelStats *stats = nullptr);

// exact composition of the element's semantic value with the jet; the
// defining property is that this vanishes identically at order sigma
Series semantic_series(const KernelElement &e, const FlowJet &jet);

// Test oracle: full kernel basis from an unstructured exact nullspace over Q.
// Deliberately naive (series_eval columns, textbook row reduction); small N only.
std::vector<KernelElement> brute_force_kernel(const VectorField &vf, const BasePoint &base,
                                              int N, int r, int k);

// timing probe for the structured mode, entirely in the arithmetic model:
// flow jet, f-list and shifted order basis are all computed modulo one word
// prime; returns milliseconds per kernel search, averaged over reps
double structured_kernel_probe_ms(const VectorField &vf, const BasePoint &base, int N, int r,
                                  int reps = 1);

} // namespace symfi

#endif

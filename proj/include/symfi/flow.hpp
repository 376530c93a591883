#ifndef SYMFI_FLOW_HPP
#define SYMFI_FLOW_HPP

#include "symfi/series.hpp"
#include "symfi/vector_field.hpp"

namespace symfi {

struct BasePoint {
    Rat x0, y0;
};

enum class FlowSolver { Recurrence, Newton };

// Truncated solution jet of the variational system about a base point with
// the normalized initial conditions (y0, 1, 0, 0):
//   y'  = B/A (x, y)
//   y1' = y1 dy(B/A)
//   y2' = y2 dy(B/A) + y1^2 dy^2(B/A)
//   y3' = y3 dy(B/A) + 3 y2 y1 dy^2(B/A) + y1^3 dy^3(B/A)
// All series are in t = x - x0 with sigma coefficients,
// sigma = min(r+1,3)(N+1)(N+2)/2.
struct FlowJet {
    BasePoint base;
    int r = 0;
    int N = 0;
    std::size_t sigma = 0;
    Series y, y1, y2, y3; // y1..y3 present iff r reaches them

    // composed data reused by verification and kernel construction
    Series a_comp;                     // A(x0+t, y(t))
    Series n1_comp, n2_comp, n3_comp;  // numerators of dy^k(B/A) along the jet
};

std::size_t flow_sigma(int N, int r);

FlowJet flow_jet(const VectorField &vf, const BasePoint &base, int N, int r,
                 FlowSolver solver = FlowSolver::Recurrence);

// same jet truncated/extended to an explicit order (used by contact-order tests)
FlowJet flow_jet_with_order(const VectorField &vf, const BasePoint &base, int N, int r,
                            std::size_t sigma, FlowSolver solver = FlowSolver::Recurrence);

// true iff every variational equation, cleared by the matching power of
// A(x, y(x)), holds to order sigma-1 and the initial conditions are (y0,1,0,0)
bool verify_jet(const VectorField &vf, const FlowJet &jet);

} // namespace symfi

#endif

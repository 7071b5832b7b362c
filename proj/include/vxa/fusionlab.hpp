#pragma once

// Fusion machinery for the p = 2 deformed realization: intertwining
// operator modes across charge sectors, truncated inner fusion products,
// the typical-module fusion verification, the logarithmic probe, and the
// orbifold fusion table.

#include "vxa/linalg.hpp"
#include "vxa/realizations.hpp"

#include <set>

namespace vxa {

// u_r v at a (possibly fractional) physical mode index r; every charge
// sector pair must pair with r integrally, else an error is raised.
StateVector intertwiner_mode(const StateVector& u, const Scalar& r, const StateVector& v);

// Left input M_t realized on v_{t,0}; right input M_t realized on
// v+_{t-1,1} = v_{t-1,1} + (1/(t-2)) v_{t-1,-1}.  Both on the p = 2
// deformed lattice.
ModuleHandle fusion_source_left(const Scalar& t);
ModuleHandle fusion_source_right(const Scalar& t);

// Spanning set of the cyclic module up to level max_degree, as
// (vector, level) pairs; closed under all grade-compatible omega and H
// modes.
std::vector<std::pair<StateVector, int>> module_span(const ModuleHandle& m,
                                                     int max_degree);

struct FusionSpan {
    int max_degree = 0;
    LatticePtr lat;
    std::vector<StateVector> basis;                // canonical reduced basis
    std::vector<std::pair<int, Scalar>> provenance;  // (source index, mode)
    std::vector<std::pair<StateVector, int>> sources;
    SpanBasis<FockMonomial> span;

    bool contains(const StateVector& v) const { return span.contains(v.terms()); }
};

// span{ u_r v : u in a spanning set of m1 up to max_degree, v the
// generator of m2, r over the compatible mode window }
FusionSpan fusion_span(const ModuleHandle& m1, const ModuleHandle& m2, int max_degree);

// M_{t1} x M_{t2} = M_{t1+t2} + M_{t1+t2-2}: membership of the two
// highest-weight vectors, their (L(0), H(0)) data, and absence of further
// singular vectors in the span.  Requires t1, t2, t1 + t2 not integral.
Report verify_fusion_p2(const Rat& t1, const Rat& t2, int max_degree = 4);

// Fusion of M_{t1} with the cyclic generator v_{t2,1} when t1 + t2 is an
// integer: reports the Jordan structure of L(0) on the top slice of the
// target (report-only, no pass/fail).  Requires t1, t2 not integral, or
// both odd integers.
Report log_probe(const Rat& t1, const Rat& t2, int max_degree = 3);

// {(i1+i2) mod 2pm^2, (i1+i2-2m) mod 2pm^2}; requires i1, i2, i1+i2
// outside mZ.
std::set<long> orbifold_fusion_table(int m, int p, long i1, long i2);

// Symmetry/closure sweep over all admissible label pairs; notes vacuity
// of the hypotheses for m = 1 and m = 2.
Report orbifold_suite(int m, int p);

}  // namespace vxa

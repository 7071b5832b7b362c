#pragma once

// Screening operators, generator sets (F, H, E, a+-), modules over the
// singlet algebra, and the deformed-realization verification suites.

#include "vxa/linalg.hpp"
#include "vxa/report.hpp"
#include "vxa/virasoro.hpp"

namespace vxa {

enum class Realization { standard_rank1, deformed_rank2 };

struct ScreeningOperator {
    std::vector<Weight> summands;  // zero modes of e^beta
    StateVector apply(const StateVector& v) const;
    // left-to-right iterated application
    StateVector apply_power(int k, const StateVector& v) const;
};

ScreeningOperator build_screening(int p, Realization real);

// S(omega) = 0 plus the displayed bracket identities on a spanning set of
// degree <= max_degree, mode range |n| <= mode_range.
Report screening_check(const ScreeningOperator& s, const ConformalVector& w,
                       int max_degree = 6, int mode_range = 2);

struct GeneratorSet {
    Realization realization;
    int p = 0;
    std::map<std::string, StateVector> gen;  // F, H, E, aminus, aplus
};

GeneratorSet build_generators(int p, Realization real);

// Symplectic-fermion relations for the p=2 deformed a+-.
Report sf_relations_check(int max_degree = 6, int mode_range = 3);

enum class ModuleKind { M_t, pi_j, F_rs, P_r };

struct ModuleHandle {
    ModuleKind kind;
    std::map<std::string, Scalar> params;
    StateVector generator;
    LatticePtr lattice;
};

ModuleHandle build_module_Mt(const Scalar& t, int p);
ModuleHandle build_module_pi(int j, int p);
ModuleHandle build_module_Frs(const Scalar& r, const Scalar& s);  // p = 2
ModuleHandle build_module_Pr(const Scalar& r);                    // p = 2

// h_{r,1} = ((r-2)^2 - 1)/8 at p = 2
Scalar h_r1(const Scalar& r);

// v_{r,s} = e^{(r/3) a1 + s a2} in the p=2 deformed lattice
StateVector v_rs(const LatticePtr& l, const Scalar& r, const Scalar& s);

// Shifted mode H(n) = Res x^{2p-2+n} Y(H, x) applied to v.
StateVector H_mode(const GeneratorSet& g, long n, const StateVector& v);

// The displayed L(0)/H(0) actions on {v_{r,1}, v_{r,-1}, v_{r,0}}, symbolic r.
Report hw_action_table(const Scalar& r);

struct PDecomposition {
    bool split = false;           // eigen split succeeded
    StateVector vplus, vminus;    // split case
    Scalar wplus, wminus;         // L(0) eigenvalues
    Scalar hplus, hminus;         // H(0) eigenvalues
    Matrix jordan_L0;             // r = 1 case: L(0) on {v_{1,1}, v_{1,-1}}
    Report report;
};

PDecomposition decompose_P_r(const Scalar& r);

// All Fock monomials of degree <= max_degree over the given charges.
std::vector<StateVector> spanning_states(const LatticePtr& l,
                                         const std::vector<Weight>& charges,
                                         int max_degree);

}  // namespace vxa

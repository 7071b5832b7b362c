#pragma once

// Vertex operator machinery: Schur-polynomial exponential expansions,
// modes of lattice exponentials e^beta (with rational mode cosets for the
// doublet sectors), and modes of arbitrary states via the iterate formula.

#include "vxa/fock.hpp"

namespace vxa {

// Coefficient of x^n in exp(sum_{k>=1} beta(-k) x^k / k), applied to the
// vacuum e^0: the Schur factor S_n(beta).
StateVector schur_exp(const Weight& beta, int n);

// S_n(beta) applied to an arbitrary state (pure creation, commuting modes).
StateVector apply_schur(const Weight& beta, int n, const StateVector& v);

// Mode (e^beta)_n v.  The mode index may be a non-integer or symbolic
// Scalar; for every charge sector gamma of v the combination
// n + <beta,gamma> must be an integer, else an error is raised.
StateVector lattice_mode(const Weight& beta, const Scalar& n, const StateVector& v);

// u_n v for arbitrary u (reduces oscillators via the iterate formula;
// base case is lattice_mode).
StateVector general_mode(const StateVector& u, const Scalar& n, const StateVector& v);

inline StateVector lattice_mode(const Weight& beta, long n, const StateVector& v) {
    return lattice_mode(beta, Scalar(n), v);
}
// general_mode memoizes monomial-level products; drop the cache between
// large independent computations to bound memory.
void clear_mode_cache();

inline StateVector general_mode(const StateVector& u, long n, const StateVector& v) {
    return general_mode(u, Scalar(n), v);
}

// Res_x f(x) Y(u,x) v for a Laurent polynomial f given as
// {exponent -> coefficient}: sum_m f_m u_(m) v.
StateVector residue_mode(const StateVector& u, const std::map<int, Rat>& f,
                         const StateVector& v);

// Laurent polynomial (1+x)^w / x^k as {exponent -> coefficient}.
std::map<int, Rat> binomial_weight_poly(int w, int k);

}  // namespace vxa

#pragma once

// Zhu algebra/bimodule calculus for the singlet algebra at p = 2: star
// actions, reduction to the polynomial bimodule picture, the fusion
// constraint ideal in the Zhu variable x, and the simple-current decision.

#include "vxa/realizations.hpp"
#include "vxa/report.hpp"
#include "vxa/unipoly.hpp"
#include "vxa/virasoro.hpp"

namespace vxa {

// Ambient data for the bimodule A(M(1,lambda)) at p = 2: the rank-1
// lattice, standard conformal vector, singlet generator H, and the
// highest-weight parameter t = <alpha, lambda> (lambda = (t/4) alpha).
struct ZhuContext {
    int p = 2;
    LatticePtr lat;
    ConformalVector omega;
    StateVector H;
    Scalar t;
    Weight lambda;
};

ZhuContext make_zhu_context(const Scalar& t);

// An element of A(M(1,lambda)), kept as a Fock representative.
struct ZhuElement {
    StateVector rep;
};

// Conformal weight of a homogeneous charge-0 algebra element; errors on
// inhomogeneous input.
int conformal_degree(const StateVector& a);

// Zhu algebra product a * b inside the vertex algebra (per homogeneous
// component of a).
StateVector zhu_algebra_product(const StateVector& a, const StateVector& b);

// a * m = Res (1+x)^{deg a} / x Y(a,x) m
ZhuElement zhu_star_left(const StateVector& a, const ZhuElement& m, const ZhuContext& cx);
// m * a = Res (1+x)^{deg a - 1} / x Y(a,x) m
ZhuElement zhu_star_right(const ZhuElement& m, const StateVector& a, const ZhuContext& cx);

// Canonical image of m in A_Vir(M(1,lambda)) = Q(t)[x,y], where x acts as
// the left omega star action and y as the right one.  Throws the singular
// witness of pbw_convert for non-generic t.
Scalar o_reduce(const ZhuElement& m, const ZhuContext& cx);

// o_reduce vs brute-force quotient-space computation at Heisenberg degree
// <= max_degree, for `samples` random generic rational t values.
Report o_reduce_crosscheck(int max_degree = 4, int samples = 5);

// Finite generating set for the constraint ideal J with W(lambda,mu) =
// C[x]/J; generators monic in x over Q(s,t), sorted by degree.
struct ConstraintIdeal {
    std::vector<UniPoly> gens;
    Scalar s, t;
    Report report;
    std::string json() const;
};

// The quartic and cubic constraints from the H singular relation and the
// right H action, plus gcd/dimension analysis (p = 2).
ConstraintIdeal derive_constraints(const Scalar& s, const Scalar& t);

// Constraint from H * v - v * H: F(r) = C(r,3) - C(s,3) - eval of the
// commutator through the (h_r, h_s) characters; roots r = s+t, s+t-2 and
// a quadratic pair kept by its defining polynomial.
struct CommutatorConstraint {
    UniPoly F;                        // in the auxiliary parameter r
    std::vector<Scalar> linear_roots; // s+t, s+t-2
    UniPoly radical_quadratic;        // 9r^2 - 6(5-3s+t)r + (5-3s+t)^2 - D
    Scalar discriminant;              // D = 1 + 12s + 4t - 12st + 4t^2
    Report report;
};

CommutatorConstraint commutator_constraint(const Scalar& s, const Scalar& t);

// nu = mu + (i - n/2) alpha, 0 <= i <= n
std::vector<Weight> virasoro_fusion_list(int n, const Weight& mu);

struct FusionDecision {
    Scalar r;                        // the surviving label
    std::vector<Scalar> survivors;   // all candidates passing every constraint
    Report report;
};

// Intersect the Zhu-side candidate lists (t = -2j) with the Virasoro-side
// list in t-coordinates; unique survivor is r = s - 2j.
FusionDecision fusion_decide(int j, const Scalar& s);

// Term-by-term diff of engine H-mode/PBW computations against the closed
// formulas for H(-n) e^lambda and the star-commutator identity (info only;
// the engine result is authoritative).
Report lem1_crosscheck(const Scalar& t);

}  // namespace vxa

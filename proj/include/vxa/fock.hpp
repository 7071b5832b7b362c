#pragma once

// Lattice & Fock space data model: lattices with rational Gram matrices,
// weights with Scalar coordinates, normal-form Fock monomials times lattice
// exponentials, and the Heisenberg mode action.

#include "vxa/scalar.hpp"

#include <memory>
#include <set>
#include <vector>

namespace vxa {

// Two-cocycle convention, given by a set of generators of the relevant
// charge group (rows, in lattice-basis coordinates) and an integer
// sign-exponent matrix m:
//   eps(beta, gamma) = (-1)^E,  E = sum_ij m_ij c_i(beta) c_j(gamma),
// where c are coordinates over the generators.  Whenever E is not an
// integer (fractional or symbolic charges), the sign is taken to be +1;
// this fixes a section over the sectors the paper leaves unpinned.
struct CocycleConvention {
    std::vector<std::vector<Rat>> gens;      // k x rank
    std::vector<std::vector<int>> sign_exp;  // k x k
};

struct LatticeSpec;
using LatticePtr = std::shared_ptr<const LatticeSpec>;

struct LatticeSpec {
    int rank = 0;
    std::vector<std::vector<Rat>> gram;
    std::vector<std::string> basis_names;
    CocycleConvention cocycle;
    std::vector<std::vector<Rat>> cocycle_gens_inv;  // inverse of gens matrix

    // Rank-1 lattice Z a with <a,a> = 2p.
    static LatticePtr rank1(int p);
    // Rank-2 lattice Z a1 + Z a2 with <a1,a1> = 2p-1, <a2,a2> = 1,
    // <a1,a2> = 0 (the deformed realization).
    static LatticePtr rank2_deformed(int p);
    static LatticePtr make(int rank, std::vector<std::vector<Rat>> gram,
                           std::vector<std::string> names, CocycleConvention cc);

    int basis_index(const std::string& name) const;
};

struct Weight {
    LatticePtr lat;
    std::vector<Scalar> coords;

    Weight() = default;
    Weight(LatticePtr l, std::vector<Scalar> c);
    static Weight zero(LatticePtr l);
    static Weight basis(LatticePtr l, int i);

    bool is_zero() const;
    Weight operator+(const Weight& o) const;
    Weight operator-(const Weight& o) const;
    Weight operator-() const;
    Weight scale(const Scalar& c) const;
    bool operator==(const Weight& o) const { return coords == o.coords; }
    bool operator!=(const Weight& o) const { return coords != o.coords; }
    bool operator<(const Weight& o) const { return coords < o.coords; }

    std::string str() const;
};

Scalar pairing(const Weight& a, const Weight& b);
// Cocycle sign (+1 or -1).
int epsilon(const Weight& beta, const Weight& gamma);

struct Osc {
    int dir;   // basis direction
    int mode;  // strictly negative
    auto operator<=>(const Osc&) const = default;
};

struct FockMonomial {
    std::vector<Osc> osc;  // sorted
    Weight charge;

    int degree() const;
    bool operator==(const FockMonomial& o) const {
        return osc == o.osc && charge == o.charge;
    }
    bool operator<(const FockMonomial& o) const {
        if (osc != o.osc) return osc < o.osc;
        return charge < o.charge;
    }
};

class StateVector {
  public:
    using Terms = std::map<FockMonomial, Scalar>;

    StateVector() = default;
    explicit StateVector(LatticePtr l) : lat_(std::move(l)) {}
    // e^gamma
    static StateVector exp_charge(const Weight& gamma);

    LatticePtr lattice() const { return lat_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(const FockMonomial& m, const Scalar& c);
    // *this += o.scale(c) without intermediates
    void add_scaled(const StateVector& o, const Scalar& c);
    // accumulate a single-charge-sector batch of oscillator terms, scaled
    void add_sector_scaled(const Weight& charge,
                           const std::map<std::vector<Osc>, Scalar>& terms,
                           const Scalar& c);
    StateVector operator+(const StateVector& o) const;
    StateVector operator-(const StateVector& o) const;
    StateVector operator-() const;
    StateVector scale(const Scalar& c) const;
    StateVector& operator+=(const StateVector& o);
    StateVector& operator-=(const StateVector& o);
    bool operator==(const StateVector& o) const { return t_ == o.t_; }
    bool operator!=(const StateVector& o) const { return t_ != o.t_; }

    int degree() const;  // max Heisenberg degree over terms; 0 if zero
    std::set<Weight> charge_sectors() const;
    // Requires a single charge sector; errors otherwise.
    Weight the_charge() const;

    std::string str() const;

  private:
    LatticePtr lat_;
    Terms t_;
};

// h(n) action: n<0 appends an oscillator, n=0 multiplies by <h,charge>,
// n>0 contracts.
StateVector heis_apply(const Weight& h, int n, const StateVector& v);
// Multiply by the single oscillator basis_dir(mode), mode < 0.
StateVector osc_mul(int dir, int mode, const StateVector& v);
// Translation operator T (derivation with T b(-n) = n b(-n-1), T e^g = g(-1)e^g).
StateVector translate(const StateVector& v);

std::string format_state(const StateVector& v);
StateVector parse_state(const std::string& text, LatticePtr lat);

}  // namespace vxa

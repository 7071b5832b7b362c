#pragma once

// Conformal vectors, Virasoro mode application, primary/singular checks,
// and conversion of Fock states to the Virasoro PBW basis.

#include "vxa/vertexops.hpp"

namespace vxa {

struct ConformalVector {
    StateVector state;
    Scalar central_charge;
    bool verified = false;
};

struct ConformalCheck {
    bool is_conformal = false;
    Scalar c;
    std::string detail;  // first failing relation if any
};

// Rank-1 lattice <a,a> = 2p:  omega = a(-1)^2/(4p) + ((p-1)/(2p)) a(-2).
ConformalVector build_standard_omega(int p);
// Rank-2 deformed:  adds ((p-1)/p) e^{-2 a2}.
ConformalVector build_deformed_omega(int p);
// Heisenberg part only (omega' of the deformed realization).
ConformalVector build_deformed_omega_prime(int p);

// Checks w_0 w = Tw, w_1 w = 2w, w_2 w = 0, w_3 w = (c/2)|0>, w_n w = 0
// for n >= 4 (finite range).
ConformalCheck verify_conformal(const StateVector& w);
// verify + wrap; throws on failure
ConformalVector as_conformal(const StateVector& w);

StateVector L(int n, const StateVector& v, const ConformalVector& w);

struct PrimaryCheck {
    bool is_primary = false;
    Scalar weight;
};
PrimaryCheck primary_check(const StateVector& v, const ConformalVector& w);

struct PBWVector {
    // descending words [n1 >= ... >= nk >= 1] standing for L(-n1)...L(-nk)
    std::map<std::vector<int>, Scalar> coeffs;
    StateVector base;  // highest-weight vector e^lambda
    std::string str() const;
    bool operator==(const PBWVector& o) const {
        return coeffs == o.coeffs && base == o.base;
    }
};

// L(-n1)...L(-nk) v
StateVector apply_L_word(const std::vector<int>& word, const StateVector& v,
                         const ConformalVector& w);

// Express v (single charge sector e^lambda descendants, rank-1 lattice) in
// the Virasoro PBW basis over e^lambda.  On a singular grade system the
// error carries the vanishing determinant in a fresh symbolic parameter.
PBWVector pbw_convert(const StateVector& v, const ConformalVector& w);
StateVector pbw_expand(const PBWVector& pv, const ConformalVector& w);

std::vector<std::vector<int>> partitions_of(int n);

}  // namespace vxa

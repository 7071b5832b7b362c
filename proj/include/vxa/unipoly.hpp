#pragma once

// Univariate polynomials over the Scalar field (used for the Zhu variable x
// and for root analysis in auxiliary parameters).

#include "vxa/scalar.hpp"

#include <vector>

namespace vxa {

class UniPoly {
  public:
    UniPoly() = default;
    UniPoly(const Scalar& c) {
        if (!c.is_zero()) c_.push_back(c);
    }
    static UniPoly x() { return monomial(1, Scalar(1L)); }
    static UniPoly monomial(int k, const Scalar& c);

    // Extract from a Scalar that is polynomial in parameter `var`
    // (denominator must be free of var).
    static UniPoly from_scalar(const Scalar& s, int var);
    Scalar to_scalar(int var) const;

    int degree() const { return int(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    Scalar coeff(int k) const {
        return (k >= 0 && k < int(c_.size())) ? c_[size_t(k)] : Scalar();
    }
    Scalar lead() const { return c_.empty() ? Scalar() : c_.back(); }

    UniPoly operator-() const;
    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly scale(const Scalar& c) const;
    bool operator==(const UniPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UniPoly& o) const { return c_ != o.c_; }

    UniPoly monic() const;
    // Division with remainder; error if divisor is zero.
    static void divrem(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r);
    bool divides(const UniPoly& a) const;  // this | a
    Scalar eval(const Scalar& v) const;
    UniPoly derivative() const;

    std::string str(const std::string& var = "x") const;

  private:
    std::vector<Scalar> c_;  // c_[k] is the coefficient of x^k; trimmed
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
};

// Monic gcd via the Euclidean algorithm; gcd(0,0) = 0.
UniPoly gcd_unipoly(UniPoly a, UniPoly b);

}  // namespace vxa

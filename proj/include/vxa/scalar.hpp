#pragma once

// Exact arithmetic substrate: arbitrary-precision rationals, sparse
// multivariate polynomials in runtime-registered named parameters, and
// rational functions (Scalar) kept in canonical form.

#include <gmpxx.h>

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vxa {

using Int = mpz_class;
using Rat = mpq_class;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Global parameter registry: parameters (t, s, r, x, y, ...) are identified
// by small integer ids assigned at first use.
int param_id(const std::string& name);
const std::string& param_name(int id);

// Exponent vector with trailing zeros trimmed, so each monomial has a unique
// representation independent of how many parameters are registered.
using Expvec = std::vector<int>;

class Poly {
  public:
    using Terms = std::map<Expvec, Rat>;

    Poly() = default;
    Poly(const Rat& c);
    Poly(long c);
    static Poly var(const std::string& name);
    static Poly var_id(int id);

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    Rat constant_value() const;  // requires is_constant()

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly mul_rat(const Rat& c) const;
    Poly pow(unsigned k) const;

    bool operator==(const Poly& o) const { return t_ == o.t_; }
    bool operator!=(const Poly& o) const { return t_ != o.t_; }
    bool operator<(const Poly& o) const { return t_ < o.t_; }

    int degree(int var) const;       // -1 for zero poly
    int total_degree() const;        // -1 for zero poly
    int main_var() const;            // largest param id present, -1 if constant
    Poly coeff_in(int var, int k) const;
    Rat leading_coeff() const;       // w.r.t. the fixed term order; 0 for zero

    const Terms& terms() const { return t_; }

    std::string str() const;

  private:
    Terms t_;  // trimmed exponent vector -> nonzero coefficient
    void add_term(const Expvec& e, const Rat& c);
    friend Poly poly_from_terms(Poly::Terms&& t);
};

// gcd of multivariate polynomials, normalized to integer-primitive form with
// positive leading coefficient; gcd(0,0) = 0.
Poly gcd_poly(const Poly& a, const Poly& b);
// Exact division test; on success q satisfies a = b*q.
bool try_divide(const Poly& a, const Poly& b, Poly& q);
Poly divexact(const Poly& a, const Poly& b);

// Rational values are stored flat (a single Rat); the numerator/denominator
// polynomial pair is only materialized for genuinely symbolic values.
class Scalar {
  public:
    Scalar() : r_(0) {}
    Scalar(const Rat& c);
    Scalar(long c) : r_(c) {}
    Scalar(int c) : r_(long(c)) {}
    Scalar(const Poly& p);
    Scalar(const Poly& num, const Poly& den);
    static Scalar var(const std::string& name) { return Scalar(Poly::var(name)); }

    bool is_zero() const { return !sym_ && r_ == 0; }
    bool is_one() const { return !sym_ && r_ == 1; }
    bool is_rational() const { return !sym_; }
    bool is_integer() const { return !sym_ && r_.get_den() == 1; }
    Rat to_rational() const;  // requires is_rational()
    long to_long() const;     // requires is_integer() and fits

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;  // error on division by zero
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
    Scalar pow(unsigned k) const;
    Scalar inverse() const;

    bool operator==(const Scalar& o) const {
        if (sym_ != o.sym_) return false;
        return sym_ ? num_ == o.num_ && den_ == o.den_ : r_ == o.r_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    // total order: rationals numerically, then symbolic values by (num, den)
    std::strong_ordering operator<=>(const Scalar& o) const;
    bool operator<(const Scalar& o) const {
        return (*this <=> o) == std::strong_ordering::less;
    }

    // Substitute parameter values (by id); error if a denominator vanishes.
    Scalar subst(const std::map<int, Scalar>& vals) const;
    Scalar subst(const std::string& name, const Scalar& value) const;

    Poly num() const;
    Poly den() const;

    std::string str() const;

  private:
    Rat r_;           // the value when sym_ is false
    Poly num_, den_;  // canonical: gcd(num,den) unit, den monic (lead coeff 1)
    bool sym_ = false;  // true iff num_/den_ carry a non-constant fraction
    void normalize();
    void frac_view(Poly& sn, Poly& sd, const Poly*& n, const Poly*& d) const;
};

inline Scalar operator+(long a, const Scalar& b) { return Scalar(a) + b; }
inline Scalar operator-(long a, const Scalar& b) { return Scalar(a) - b; }
inline Scalar operator*(long a, const Scalar& b) { return Scalar(a) * b; }

// x(x-1)...(x-k+1)/k!
Scalar generalized_binomial(const Scalar& x, unsigned k);

// Parse an arithmetic expression over integers and parameter names with
// + - * / ^ and parentheses, e.g. "(t^2 - 2*t)/(8)".
Scalar parse_scalar(const std::string& text);

// Substitute into a polynomial (result may be rational-function valued).
Scalar poly_subst(const Poly& p, const std::map<int, Scalar>& vals);

}  // namespace vxa

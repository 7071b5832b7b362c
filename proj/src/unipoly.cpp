#include "vxa/unipoly.hpp"

#include <sstream>

namespace vxa {

UniPoly UniPoly::monomial(int k, const Scalar& c) {
    UniPoly p;
    if (c.is_zero() || k < 0) return p;
    p.c_.assign(size_t(k) + 1, Scalar());
    p.c_.back() = c;
    return p;
}

UniPoly UniPoly::from_scalar(const Scalar& s, int var) {
    if (s.den().degree(var) > 0)
        throw error("UniPoly::from_scalar: denominator involves the variable: " + s.str());
    UniPoly p;
    int d = s.num().degree(var);
    Scalar den(s.den());
    for (int k = 0; k <= d; ++k)
        p.c_.push_back(Scalar(s.num().coeff_in(var, k)) / den);
    p.trim();
    return p;
}

Scalar UniPoly::to_scalar(int var) const {
    Scalar x(Poly::var_id(var));
    Scalar acc;
    for (int k = 0; k <= degree(); ++k) acc += c_[size_t(k)] * x.pow(unsigned(k));
    return acc;
}

UniPoly UniPoly::operator-() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    UniPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), Scalar());
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
    r.trim();
    return r;
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
    UniPoly r;
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, Scalar());
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    r.trim();
    return r;
}

UniPoly UniPoly::scale(const Scalar& c) const {
    UniPoly r;
    if (c.is_zero()) return r;
    for (auto& k : c_) r.c_.push_back(k * c);
    r.trim();
    return r;
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    return scale(lead().inverse());
}

void UniPoly::divrem(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r) {
    if (b.is_zero()) throw error("UniPoly division by zero");
    q = UniPoly();
    r = a;
    Scalar ilb = b.lead().inverse();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int k = r.degree() - b.degree();
        Scalar c = r.lead() * ilb;
        UniPoly step = monomial(k, c);
        q = q + step;
        r = r - step * b;
    }
}

bool UniPoly::divides(const UniPoly& a) const {
    if (is_zero()) return a.is_zero();
    UniPoly q, r;
    divrem(a, *this, q, r);
    return r.is_zero();
}

Scalar UniPoly::eval(const Scalar& v) const {
    Scalar acc;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * v + c_[i];
    return acc;
}

UniPoly UniPoly::derivative() const {
    UniPoly r;
    for (int k = 1; k <= degree(); ++k)
        r.c_.push_back(c_[size_t(k)] * Scalar(long(k)));
    r.trim();
    return r;
}

std::string UniPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Scalar& c = c_[size_t(k)];
        if (c.is_zero()) continue;
        if (!first) out << " + ";
        first = false;
        out << "(" << c.str() << ")";
        if (k >= 1) out << "*" << var;
        if (k >= 2) out << "^" << k;
    }
    return out.str();
}

UniPoly gcd_unipoly(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly q, r;
        UniPoly::divrem(a, b, q, r);
        a = b;
        b = r;
    }
    return a.monic();
}

}  // namespace vxa

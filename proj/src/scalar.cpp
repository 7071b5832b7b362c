#include "vxa/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>

namespace vxa {

// ---------------------------------------------------------------- registry

namespace {
std::vector<std::string>& registry() {
    static std::vector<std::string> names;
    return names;
}
std::mutex registry_mutex;
}  // namespace

int param_id(const std::string& name) {
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto& names = registry();
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return int(i);
    names.push_back(name);
    return int(names.size()) - 1;
}

const std::string& param_name(int id) {
    std::lock_guard<std::mutex> lock(registry_mutex);
    return registry().at(size_t(id));
}

// ---------------------------------------------------------------- Poly

namespace {
void trim(Expvec& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
}
Expvec mono_mul(const Expvec& a, const Expvec& b) {
    Expvec r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}
}  // namespace

Poly poly_from_terms(Poly::Terms&& t) {
    Poly p;
    // callers guarantee trimmed keys and nonzero values
    for (auto& [e, c] : t) p.add_term(e, c);
    return p;
}

namespace {
Rat canon(Rat c) {
    c.canonicalize();
    return c;
}
}  // namespace

Poly::Poly(const Rat& c) {
    Rat cc = canon(c);
    if (cc != 0) t_[{}] = cc;
}

Poly::Poly(long c) {
    if (c != 0) t_[{}] = Rat(c);
}

Poly Poly::var(const std::string& name) { return var_id(param_id(name)); }

Poly Poly::var_id(int id) {
    Poly p;
    Expvec e(size_t(id) + 1, 0);
    e[size_t(id)] = 1;
    p.t_[e] = Rat(1);
    return p;
}

void Poly::add_term(const Expvec& e, const Rat& c0) {
    Rat c = canon(c0);
    if (c == 0) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
        t_[e] = c;
    } else {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

bool Poly::is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty());
}

bool Poly::is_one() const {
    return t_.size() == 1 && t_.begin()->first.empty() && t_.begin()->second == 1;
}

Rat Poly::constant_value() const {
    if (t_.empty()) return Rat(0);
    if (!is_constant()) throw error("Poly::constant_value on non-constant " + str());
    return t_.begin()->second;
}

Poly Poly::operator-() const {
    Poly r;
    for (auto& [e, c] : t_) r.t_[e] = -c;
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (auto& [e, c] : o.t_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
}

Poly Poly::operator*(const Poly& o) const {
    // constant factors scale term-by-term without exponent merging
    if (is_constant()) {
        if (t_.empty()) return Poly();
        return o.mul_rat(t_.begin()->second);
    }
    if (o.is_constant()) {
        if (o.t_.empty()) return Poly();
        return mul_rat(o.t_.begin()->second);
    }
    Poly r;
    for (auto& [e1, c1] : t_)
        for (auto& [e2, c2] : o.t_) r.add_term(mono_mul(e1, e2), c1 * c2);
    return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly Poly::mul_rat(const Rat& c0) const {
    Poly r;
    Rat c = canon(c0);
    if (c == 0) return r;
    for (auto& [e, k] : t_) r.t_[e] = k * c;
    return r;
}

Poly Poly::pow(unsigned k) const {
    Poly r(1L);
    Poly base = *this;
    while (k) {
        if (k & 1) r *= base;
        base = (k >>= 1) ? base * base : base;
    }
    return r;
}

int Poly::degree(int var) const {
    int d = -1;
    for (auto& [e, c] : t_) {
        int k = size_t(var) < e.size() ? e[size_t(var)] : 0;
        d = std::max(d, k);
    }
    return d;
}

int Poly::total_degree() const {
    int d = -1;
    for (auto& [e, c] : t_) {
        int s = 0;
        for (int k : e) s += k;
        d = std::max(d, s);
    }
    return d;
}

int Poly::main_var() const {
    int v = -1;
    for (auto& [e, c] : t_) v = std::max(v, int(e.size()) - 1);
    return v;
}

Poly Poly::coeff_in(int var, int k) const {
    Poly r;
    for (auto& [e, c] : t_) {
        int kk = size_t(var) < e.size() ? e[size_t(var)] : 0;
        if (kk != k) continue;
        Expvec e2 = e;
        if (size_t(var) < e2.size()) e2[size_t(var)] = 0;
        trim(e2);
        r.add_term(e2, c);
    }
    return r;
}

Rat Poly::leading_coeff() const {
    if (t_.empty()) return Rat(0);
    return t_.rbegin()->second;
}

std::string Poly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // print highest term first
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const Expvec& e = it->first;
        Rat c = it->second;
        bool neg = c < 0;
        if (first) {
            if (neg) out << "-";
        } else {
            out << (neg ? " - " : " + ");
        }
        first = false;
        if (neg) c = -c;
        bool have_vars = !e.empty();
        if (c != 1 || !have_vars) {
            out << c.get_str();
            if (have_vars) out << "*";
        }
        bool firstv = true;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!firstv) out << "*";
            firstv = false;
            out << param_name(int(i));
            if (e[i] != 1) out << "^" << e[i];
        }
    }
    return out.str();
}

// ---------------------------------------------------------------- gcd

namespace {

// integer-primitive part with positive leading coefficient; returns the
// removed rational content in *content if requested
Poly intprim(const Poly& p, Rat* content = nullptr) {
    if (p.is_zero()) {
        if (content) *content = 0;
        return p;
    }
    Int g = 0, l = 1;
    for (auto& [e, c] : p.terms()) {
        g = gcd(g, c.get_num());
        l = lcm(l, c.get_den());
    }
    Rat cont(g, l);
    cont.canonicalize();
    if (p.leading_coeff() < 0) cont = -cont;
    if (content) *content = cont;
    return p.mul_rat(Rat(1) / cont);
}

Poly univar_assemble(int var, const std::map<int, Poly>& coeffs) {
    Poly x = Poly::var_id(var);
    Poly r;
    for (auto& [k, c] : coeffs) r += c * x.pow(unsigned(k));
    return r;
}

std::map<int, Poly> univar_view(const Poly& p, int var) {
    std::map<int, Poly> r;
    int d = p.degree(var);
    for (int k = 0; k <= d; ++k) {
        Poly c = p.coeff_in(var, k);
        if (!c.is_zero()) r[k] = c;
    }
    return r;
}

Poly content_var(const Poly& p, int var) {
    Poly g;
    for (auto& [k, c] : univar_view(p, var)) g = gcd_poly(g, c);
    return g;
}

// pseudo-remainder of a by b in var (sloppy variant: multiply by lc(b) each
// reduction step; callers re-normalize by primitive part)
Poly prem(Poly a, const Poly& b, int var) {
    int db = b.degree(var);
    Poly lb = b.coeff_in(var, db);
    Poly x = Poly::var_id(var);
    int da;
    while (!a.is_zero() && (da = a.degree(var)) >= db) {
        Poly la = a.coeff_in(var, da);
        a = lb * a - la * x.pow(unsigned(da - db)) * b;
    }
    return a;
}

}  // namespace

Poly gcd_poly(const Poly& a, const Poly& b) {
    if (a.is_zero()) return intprim(b);
    if (b.is_zero()) return intprim(a);
    if (a.is_constant() || b.is_constant()) return Poly(1L);
    int v = std::max(a.main_var(), b.main_var());
    if (a.degree(v) == 0) return gcd_poly(a, content_var(b, v));
    if (b.degree(v) == 0) return gcd_poly(content_var(a, v), b);
    Poly ca = content_var(a, v), cb = content_var(b, v);
    Poly c = gcd_poly(ca, cb);
    Poly A = divexact(a, ca), B = divexact(b, cb);
    if (A.degree(v) < B.degree(v)) std::swap(A, B);
    for (;;) {
        Poly r = prem(A, B, v);
        if (r.is_zero()) {
            Poly pb = divexact(B, content_var(B, v));
            return intprim(c * pb);
        }
        if (r.degree(v) == 0) return intprim(c);
        r = divexact(r, content_var(r, v));
        A = B;
        B = intprim(r);
    }
}

bool try_divide(const Poly& a, const Poly& b, Poly& q) {
    if (b.is_zero()) throw error("division of Poly by zero");
    if (a.is_zero()) {
        q = Poly();
        return true;
    }
    if (b.is_constant()) {
        q = a.mul_rat(Rat(1) / b.constant_value());
        return true;
    }
    int v = b.main_var();
    int db = b.degree(v);
    Poly lb = b.coeff_in(v, db);
    Poly x = Poly::var_id(v);
    Poly r = a, acc;
    while (!r.is_zero()) {
        int dr = r.degree(v);
        if (dr < db) return false;
        Poly lr = r.coeff_in(v, dr);
        Poly t;
        if (!try_divide(lr, lb, t)) return false;
        Poly step = t * x.pow(unsigned(dr - db));
        acc += step;
        r -= step * b;
    }
    q = acc;
    return true;
}

Poly divexact(const Poly& a, const Poly& b) {
    Poly q;
    if (!try_divide(a, b, q)) throw error("non-exact Poly division");
    return q;
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(const Rat& c) : r_(canon(c)) {}

Scalar::Scalar(const Poly& p) {
    if (p.is_constant()) {
        r_ = p.constant_value();
    } else {
        num_ = p;
        den_ = Poly(1L);
        sym_ = true;
    }
}

Scalar::Scalar(const Poly& num, const Poly& den) : num_(num), den_(den), sym_(true) {
    if (den_.is_zero()) throw error("Scalar with zero denominator");
    normalize();
}

void Scalar::normalize() {
    if (num_.is_zero() || (num_.is_constant() && den_.is_constant())) {
        r_ = num_.is_zero() ? Rat(0) : num_.constant_value() / den_.constant_value();
        num_ = Poly();
        den_ = Poly();
        sym_ = false;
        return;
    }
    if (!num_.is_constant() && !den_.is_constant()) {
        Poly g = gcd_poly(num_, den_);
        if (!g.is_one()) {
            num_ = divexact(num_, g);
            den_ = divexact(den_, g);
        }
    }
    if (num_.is_constant() && den_.is_constant()) {
        r_ = num_.constant_value() / den_.constant_value();
        num_ = Poly();
        den_ = Poly();
        sym_ = false;
        return;
    }
    Rat lc = den_.leading_coeff();
    if (lc != 1) {
        num_ = num_.mul_rat(Rat(1) / lc);
        den_ = den_.mul_rat(Rat(1) / lc);
    }
}

// materialize a (num, den) view; for rational values the storage polys are
// filled and pointed at, for symbolic values the members are referenced
void Scalar::frac_view(Poly& sn, Poly& sd, const Poly*& n, const Poly*& d) const {
    if (sym_) {
        n = &num_;
        d = &den_;
    } else {
        sn = Poly(r_);
        sd = Poly(1L);
        n = &sn;
        d = &sd;
    }
}

Poly Scalar::num() const { return sym_ ? num_ : Poly(r_); }
Poly Scalar::den() const { return sym_ ? den_ : Poly(1L); }

namespace {

std::strong_ordering cmp_rat(const Rat& a, const Rat& b) {
    int c = mpq_cmp(a.get_mpq_t(), b.get_mpq_t());
    return c < 0    ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
}

// matches the lexicographic order of the underlying term maps
std::strong_ordering cmp_poly(const Poly& a, const Poly& b) {
    auto ai = a.terms().begin(), ae = a.terms().end();
    auto bi = b.terms().begin(), be = b.terms().end();
    for (; ai != ae && bi != be; ++ai, ++bi) {
        if (ai->first != bi->first)
            return ai->first < bi->first ? std::strong_ordering::less
                                         : std::strong_ordering::greater;
        auto c = cmp_rat(ai->second, bi->second);
        if (c != std::strong_ordering::equal) return c;
    }
    if (ai != ae) return std::strong_ordering::greater;
    if (bi != be) return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering Scalar::operator<=>(const Scalar& o) const {
    if (sym_ != o.sym_)
        return sym_ ? std::strong_ordering::greater : std::strong_ordering::less;
    if (!sym_) return cmp_rat(r_, o.r_);
    auto c = cmp_poly(num_, o.num_);
    if (c != std::strong_ordering::equal) return c;
    return cmp_poly(den_, o.den_);
}

Rat Scalar::to_rational() const {
    if (sym_) throw error("Scalar not rational: " + str());
    return r_;
}

long Scalar::to_long() const {
    if (!is_integer() || !r_.get_num().fits_slong_p())
        throw error("Scalar not a small integer: " + str());
    return r_.get_num().get_si();
}

Scalar Scalar::operator-() const {
    Scalar r;
    if (sym_) {
        r.num_ = -num_;
        r.den_ = den_;
        r.sym_ = true;
    } else {
        r.r_ = -r_;
    }
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    if (!sym_ && !o.sym_) {
        Scalar r;
        r.r_ = r_ + o.r_;
        return r;
    }
    Poly sn, sd, tn, td;
    const Poly *an, *ad, *bn, *bd;
    frac_view(sn, sd, an, ad);
    o.frac_view(tn, td, bn, bd);
    if (*ad == *bd) return Scalar(*an + *bn, *ad);
    return Scalar(*an * *bd + *bn * *ad, *ad * *bd);
}

Scalar Scalar::operator-(const Scalar& o) const {
    if (!sym_ && !o.sym_) {
        Scalar r;
        r.r_ = r_ - o.r_;
        return r;
    }
    Poly sn, sd, tn, td;
    const Poly *an, *ad, *bn, *bd;
    frac_view(sn, sd, an, ad);
    o.frac_view(tn, td, bn, bd);
    if (*ad == *bd) return Scalar(*an - *bn, *ad);
    return Scalar(*an * *bd - *bn * *ad, *ad * *bd);
}

Scalar Scalar::operator*(const Scalar& o) const {
    if (!sym_ && !o.sym_) {
        Scalar r;
        r.r_ = r_ * o.r_;
        return r;
    }
    if (is_zero() || o.is_zero()) return Scalar();
    Poly sn, sd, tn, td;
    const Poly *an, *ad, *bn, *bd;
    frac_view(sn, sd, an, ad);
    o.frac_view(tn, td, bn, bd);
    return Scalar(*an * *bn, *ad * *bd);
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.is_zero()) throw error("division by zero Scalar");
    if (!sym_ && !o.sym_) {
        Scalar r;
        r.r_ = r_ / o.r_;
        return r;
    }
    Poly sn, sd, tn, td;
    const Poly *an, *ad, *bn, *bd;
    frac_view(sn, sd, an, ad);
    o.frac_view(tn, td, bn, bd);
    return Scalar(*an * *bd, *ad * *bn);
}

Scalar Scalar::pow(unsigned k) const {
    Scalar r(1L);
    for (unsigned i = 0; i < k; ++i) r *= *this;
    return r;
}

Scalar Scalar::inverse() const { return Scalar(1L) / *this; }

Scalar poly_subst(const Poly& p, const std::map<int, Scalar>& vals) {
    Scalar acc;
    for (auto& [e, c] : p.terms()) {
        Scalar term{Rat(c)};
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            auto it = vals.find(int(i));
            Scalar v = it != vals.end() ? it->second : Scalar(Poly::var_id(int(i)));
            term *= v.pow(unsigned(e[i]));
        }
        acc += term;
    }
    return acc;
}

Scalar Scalar::subst(const std::map<int, Scalar>& vals) const {
    if (!sym_) return *this;
    Scalar d = poly_subst(den_, vals);
    if (d.is_zero())
        throw error("substitution zeroes denominator of " + str());
    return poly_subst(num_, vals) / d;
}

Scalar Scalar::subst(const std::string& name, const Scalar& value) const {
    return subst({{param_id(name), value}});
}

std::string Scalar::str() const {
    if (!sym_) return r_.get_str();
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

Scalar generalized_binomial(const Scalar& x, unsigned k) {
    Scalar r(1L);
    Rat fact(1);
    for (unsigned i = 0; i < k; ++i) {
        r *= x - Scalar(long(i));
        fact *= int(i) + 1;
    }
    return r * Scalar(Rat(1) / fact);
}

// ---------------------------------------------------------------- parser

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw error("parse error at position " + std::to_string(pos) + ": " + what);
    }

    Scalar parse_expr() {
        Scalar v = parse_term();
        for (;;) {
            if (eat('+'))
                v += parse_term();
            else if (eat('-'))
                v -= parse_term();
            else
                return v;
        }
    }

    Scalar parse_term() {
        Scalar v = parse_unary();
        for (;;) {
            if (eat('*'))
                v *= parse_unary();
            else if (eat('/'))
                v /= parse_unary();
            else
                return v;
        }
    }

    Scalar parse_unary() {
        if (eat('-')) return -parse_unary();
        if (eat('+')) return parse_unary();
        return parse_power();
    }

    Scalar parse_power() {
        Scalar base = parse_primary();
        if (eat('^')) {
            skip_ws();
            bool neg = eat('-');
            std::string digits = read_digits();
            if (digits.empty()) fail("expected integer exponent");
            long e = std::stol(digits);
            Scalar p = base.pow(unsigned(e));
            return neg ? p.inverse() : p;
        }
        return base;
    }

    std::string read_digits() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        return s.substr(start, pos - start);
    }

    Scalar parse_primary() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        if (eat('(')) {
            Scalar v = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits = read_digits();
            return Scalar(Rat(Int(digits)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            return Scalar::var(s.substr(start, pos - start));
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

Scalar parse_scalar(const std::string& text) {
    Parser p(text);
    Scalar v = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return v;
}

}  // namespace vxa

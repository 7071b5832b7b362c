#include "vxa/fock.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace vxa {

// ---------------------------------------------------------------- lattice

namespace {

std::vector<std::vector<Rat>> invert_rat(std::vector<std::vector<Rat>> M) {
    size_t n = M.size();
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, 0));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && M[piv][col] == 0) ++piv;
        if (piv == n) throw error("cocycle generator matrix is singular");
        std::swap(M[col], M[piv]);
        std::swap(inv[col], inv[piv]);
        Rat d = M[col][col];
        for (size_t j = 0; j < n; ++j) {
            M[col][j] /= d;
            inv[col][j] /= d;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || M[i][col] == 0) continue;
            Rat f = M[i][col];
            for (size_t j = 0; j < n; ++j) {
                M[i][j] -= f * M[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

std::vector<std::vector<Rat>> transpose_rat(const std::vector<std::vector<Rat>>& M) {
    size_t n = M.size(), m = n ? M[0].size() : 0;
    std::vector<std::vector<Rat>> T(m, std::vector<Rat>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) T[j][i] = M[i][j];
    return T;
}

}  // namespace

LatticePtr LatticeSpec::make(int rank, std::vector<std::vector<Rat>> gram,
                             std::vector<std::string> names, CocycleConvention cc) {
    auto l = std::make_shared<LatticeSpec>();
    l->rank = rank;
    l->gram = std::move(gram);
    l->basis_names = std::move(names);
    l->cocycle = std::move(cc);
    l->cocycle_gens_inv = invert_rat(transpose_rat(l->cocycle.gens));
    return l;
}

// the named constructors are memoized so that repeated requests share one
// instance: Weight pairing and the mode caches key on lattice identity
LatticePtr LatticeSpec::rank1(int p) {
    static std::mutex mu;
    static std::map<int, LatticePtr> pool;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = pool[p];
    if (!slot) {
        CocycleConvention cc;
        cc.gens = {{Rat(1, 2)}};  // a/2 generates the doublet charge group
        cc.sign_exp = {{0}};
        slot = make(1, {{Rat(2 * p)}}, {"a"}, std::move(cc));
    }
    return slot;
}

LatticePtr LatticeSpec::rank2_deformed(int p) {
    static std::mutex mu;
    static std::map<int, LatticePtr> pool;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = pool[p];
    if (!slot) {
        CocycleConvention cc;
        // generators (a1+a2)/2 and 2*a2 of the charge group used by the
        // deformed doublet realization
        cc.gens = {{Rat(1, 2), Rat(1, 2)}, {Rat(0), Rat(2)}};
        cc.sign_exp = {{0, 1}, {0, 0}};
        slot = make(2, {{Rat(2 * p - 1), Rat(0)}, {Rat(0), Rat(1)}}, {"a1", "a2"},
                    std::move(cc));
    }
    return slot;
}

int LatticeSpec::basis_index(const std::string& name) const {
    for (int i = 0; i < rank; ++i)
        if (basis_names[size_t(i)] == name) return i;
    throw error("unknown lattice basis name: " + name);
}

// ---------------------------------------------------------------- weights

Weight::Weight(LatticePtr l, std::vector<Scalar> c) : lat(std::move(l)), coords(std::move(c)) {
    if (int(coords.size()) != lat->rank) throw error("Weight coordinate size mismatch");
}

Weight Weight::zero(LatticePtr l) {
    std::vector<Scalar> c(size_t(l->rank));
    return Weight(std::move(l), std::move(c));
}

Weight Weight::basis(LatticePtr l, int i) {
    Weight w = zero(std::move(l));
    w.coords.at(size_t(i)) = Scalar(1L);
    return w;
}

bool Weight::is_zero() const {
    return std::all_of(coords.begin(), coords.end(),
                       [](const Scalar& c) { return c.is_zero(); });
}

Weight Weight::operator+(const Weight& o) const {
    Weight r = *this;
    for (size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
    return r;
}

Weight Weight::operator-(const Weight& o) const {
    Weight r = *this;
    for (size_t i = 0; i < coords.size(); ++i) r.coords[i] -= o.coords[i];
    return r;
}

Weight Weight::operator-() const { return scale(Scalar(-1L)); }

Weight Weight::scale(const Scalar& c) const {
    Weight r = *this;
    for (auto& x : r.coords) x *= c;
    return r;
}

std::string Weight::str() const {
    std::ostringstream out;
    bool first = true;
    for (size_t i = 0; i < coords.size(); ++i) {
        if (coords[i].is_zero()) continue;
        if (!first) out << " + ";
        first = false;
        if (coords[i].is_one())
            out << lat->basis_names[i];
        else if (coords[i].is_rational())
            out << coords[i].str() << "*" << lat->basis_names[i];
        else
            out << "(" << coords[i].str() << ")*" << lat->basis_names[i];
    }
    if (first) out << "0";
    return out.str();
}

Scalar pairing(const Weight& a, const Weight& b) {
    if (a.lat != b.lat) throw error("pairing: lattice mismatch");
    Scalar acc;
    for (size_t i = 0; i < a.coords.size(); ++i) {
        if (a.coords[i].is_zero()) continue;
        for (size_t j = 0; j < b.coords.size(); ++j) {
            if (b.coords[j].is_zero()) continue;
            acc += a.coords[i] * b.coords[j] * Scalar(a.lat->gram[i][j]);
        }
    }
    return acc;
}

int epsilon(const Weight& beta, const Weight& gamma) {
    const LatticeSpec& L = *beta.lat;
    size_t k = L.cocycle.gens.size();
    auto coords_over_gens = [&](const Weight& w) {
        std::vector<Scalar> c(k);
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < w.coords.size(); ++j)
                c[i] += Scalar(L.cocycle_gens_inv[i][j]) * w.coords[j];
        return c;
    };
    std::vector<Scalar> b = coords_over_gens(beta), d = coords_over_gens(gamma);
    Scalar E;
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            if (L.cocycle.sign_exp[i][j] != 0)
                E += Scalar(long(L.cocycle.sign_exp[i][j])) * b[i] * d[j];
    if (!E.is_rational()) return 1;
    Rat e = E.to_rational();
    if (e.get_den() != 1) return 1;
    return mpz_odd_p(e.get_num().get_mpz_t()) ? -1 : 1;
}

// ---------------------------------------------------------------- states

int FockMonomial::degree() const {
    int d = 0;
    for (const Osc& o : osc) d -= o.mode;
    return d;
}

StateVector StateVector::exp_charge(const Weight& gamma) {
    StateVector v(gamma.lat);
    FockMonomial m;
    m.charge = gamma;
    v.t_[m] = Scalar(1L);
    return v;
}

void StateVector::add_term(const FockMonomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_[m] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

StateVector StateVector::operator+(const StateVector& o) const {
    StateVector r = *this;
    r += o;
    return r;
}

StateVector StateVector::operator-(const StateVector& o) const {
    StateVector r = *this;
    r -= o;
    return r;
}

StateVector StateVector::operator-() const { return scale(Scalar(-1L)); }

StateVector StateVector::scale(const Scalar& c) const {
    StateVector r(lat_);
    if (c.is_zero()) return r;
    for (auto& [m, k] : t_) r.t_[m] = k * c;
    return r;
}

void StateVector::add_scaled(const StateVector& o, const Scalar& c) {
    if (!lat_) lat_ = o.lat_;
    if (c.is_zero()) return;
    bool unit = c.is_one();
    if (o.t_.size() * 16 < t_.size() + 16) {
        // sparse update: per-element search
        for (auto& [m, k] : o.t_) add_term(m, unit ? k : k * c);
        return;
    }
    // comparable sizes: single sorted merge pass with insertion hints
    auto pos = t_.begin();
    for (auto& [m, k] : o.t_) {
        while (pos != t_.end() && pos->first < m) ++pos;
        if (pos != t_.end() && pos->first == m) {
            pos->second += unit ? k : k * c;
            if (pos->second.is_zero())
                pos = t_.erase(pos);
            else
                ++pos;
        } else {
            pos = t_.emplace_hint(pos, m, unit ? k : k * c);
            ++pos;
        }
    }
}

void StateVector::add_sector_scaled(const Weight& charge,
                                    const std::map<std::vector<Osc>, Scalar>& terms,
                                    const Scalar& c) {
    if (!lat_ && charge.lat) lat_ = charge.lat;
    if (c.is_zero()) return;
    bool unit = c.is_one();
    FockMonomial key;
    key.charge = charge;
    auto pos = t_.begin();
    for (auto& [osc, k] : terms) {
        key.osc = osc;
        while (pos != t_.end() && pos->first < key) ++pos;
        if (pos != t_.end() && pos->first == key) {
            pos->second += unit ? k : k * c;
            if (pos->second.is_zero())
                pos = t_.erase(pos);
            else
                ++pos;
        } else {
            pos = t_.emplace_hint(pos, key, unit ? k : k * c);
            ++pos;
        }
    }
}

StateVector& StateVector::operator+=(const StateVector& o) {
    add_scaled(o, Scalar(1L));
    return *this;
}

StateVector& StateVector::operator-=(const StateVector& o) {
    add_scaled(o, Scalar(-1L));
    return *this;
}

int StateVector::degree() const {
    int d = 0;
    for (auto& [m, c] : t_) d = std::max(d, m.degree());
    return d;
}

std::set<Weight> StateVector::charge_sectors() const {
    std::set<Weight> s;
    for (auto& [m, c] : t_) s.insert(m.charge);
    return s;
}

Weight StateVector::the_charge() const {
    auto s = charge_sectors();
    if (s.size() != 1) throw error("StateVector is not in a single charge sector");
    return *s.begin();
}

StateVector osc_mul(int dir, int mode, const StateVector& v) {
    if (mode >= 0) throw error("osc_mul: mode must be negative");
    StateVector r(v.lattice());
    for (auto& [m, c] : v.terms()) {
        FockMonomial m2 = m;
        Osc o{dir, mode};
        m2.osc.insert(std::upper_bound(m2.osc.begin(), m2.osc.end(), o), o);
        r.add_term(m2, c);
    }
    return r;
}

namespace {
Scalar pairing_with_basis(const Weight& h, int dir) {
    Scalar acc;
    for (size_t j = 0; j < h.coords.size(); ++j)
        acc += h.coords[j] * Scalar(h.lat->gram[j][size_t(dir)]);
    return acc;
}
}  // namespace

StateVector heis_apply(const Weight& h, int n, const StateVector& v) {
    StateVector r(v.lattice());
    if (n < 0) {
        for (size_t j = 0; j < h.coords.size(); ++j) {
            if (h.coords[j].is_zero()) continue;
            r += osc_mul(int(j), n, v).scale(h.coords[j]);
        }
        return r;
    }
    if (n == 0) {
        for (auto& [m, c] : v.terms()) r.add_term(m, c * pairing(h, m.charge));
        return r;
    }
    for (auto& [m, c] : v.terms()) {
        for (size_t pos = 0; pos < m.osc.size(); ++pos) {
            if (m.osc[pos].mode != -n) continue;
            Scalar f = c * Scalar(long(n)) * pairing_with_basis(h, m.osc[pos].dir);
            FockMonomial m2 = m;
            m2.osc.erase(m2.osc.begin() + long(pos));
            r.add_term(m2, f);
        }
    }
    return r;
}

StateVector translate(const StateVector& v) {
    StateVector r(v.lattice());
    for (auto& [m, c] : v.terms()) {
        for (size_t pos = 0; pos < m.osc.size(); ++pos) {
            FockMonomial m2 = m;
            int mode = m2.osc[pos].mode;
            int dir = m2.osc[pos].dir;
            m2.osc.erase(m2.osc.begin() + long(pos));
            Osc o{dir, mode - 1};
            m2.osc.insert(std::upper_bound(m2.osc.begin(), m2.osc.end(), o), o);
            r.add_term(m2, c * Scalar(long(-mode)));
        }
        // charge part: gamma(-1) e^gamma
        for (size_t j = 0; j < m.charge.coords.size(); ++j) {
            if (m.charge.coords[j].is_zero()) continue;
            FockMonomial m2 = m;
            Osc o{int(j), -1};
            m2.osc.insert(std::upper_bound(m2.osc.begin(), m2.osc.end(), o), o);
            r.add_term(m2, c * m.charge.coords[j]);
        }
    }
    return r;
}

// ---------------------------------------------------------------- format

std::string format_state(const StateVector& v) {
    if (v.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto& [m, c] : v.terms()) {
        if (!first) out << " + ";
        first = false;
        std::vector<std::string> factors;
        bool coeff_one = c.is_one();
        if (!coeff_one) {
            if (c.is_rational())
                factors.push_back(c.to_rational().get_str());
            else
                factors.push_back("(" + c.str() + ")");
        }
        for (size_t i = 0; i < m.osc.size();) {
            size_t j = i;
            while (j < m.osc.size() && m.osc[j] == m.osc[i]) ++j;
            std::ostringstream f;
            f << v.lattice()->basis_names[size_t(m.osc[i].dir)] << "(" << m.osc[i].mode
              << ")";
            if (j - i > 1) f << "^" << (j - i);
            factors.push_back(f.str());
            i = j;
        }
        factors.push_back("e[" + m.charge.str() + "]");
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) out << "*";
            out << factors[i];
        }
    }
    return out.str();
}

std::string StateVector::str() const { return format_state(*this); }

// ---------------------------------------------------------------- parse

namespace {

// split at top-level occurrences of any of the given chars, respecting
// () and [] nesting; the split chars are kept as separators
std::vector<std::pair<char, std::string>> split_top(const std::string& s,
                                                    const std::string& seps) {
    std::vector<std::pair<char, std::string>> parts;
    int depth = 0;
    char pending = '\0';
    std::string cur;
    for (char ch : s) {
        if (ch == '(' || ch == '[') ++depth;
        if (ch == ')' || ch == ']') --depth;
        if (depth == 0 && seps.find(ch) != std::string::npos) {
            if (!cur.empty() || pending != '\0') parts.emplace_back(pending, cur);
            pending = ch;
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.emplace_back(pending, cur);
    return parts;
}

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

Weight parse_charge(const std::string& body, const LatticePtr& lat) {
    Weight w = Weight::zero(lat);
    std::string inner = strip(body);
    if (inner == "0" || inner.empty()) return w;
    for (auto& [sign, termstr] : split_top(inner, "+-")) {
        std::string term = strip(termstr);
        if (term.empty()) {
            if (sign == '\0') continue;
            throw error("parse_charge: empty term in '" + body + "'");
        }
        auto factors = split_top(term, "*");
        std::string name = strip(factors.back().second);
        std::string coeff_expr;
        for (size_t i = 0; i + 1 < factors.size(); ++i) {
            if (i) coeff_expr += "*";
            coeff_expr += factors[i].second;
        }
        Scalar c = coeff_expr.empty() ? Scalar(1L) : parse_scalar(coeff_expr);
        if (sign == '-') c = -c;
        w.coords.at(size_t(lat->basis_index(name))) += c;
    }
    return w;
}

// try to read an oscillator factor `name(-k)` or `name(-k)^e`
bool try_parse_osc(const std::string& fac, const LatticePtr& lat, int& dir, int& mode,
                   int& exp) {
    size_t paren = fac.find('(');
    if (paren == std::string::npos || paren == 0) return false;
    std::string name = strip(fac.substr(0, paren));
    size_t close = fac.find(')', paren);
    if (close == std::string::npos) return false;
    std::string num = strip(fac.substr(paren + 1, close - paren - 1));
    if (num.empty() || num[0] != '-') return false;  // oscillator modes are negative
    bool is_name = false;
    for (auto& n : lat->basis_names)
        if (n == name) is_name = true;
    if (!is_name) return false;
    try {
        mode = std::stoi(num);
    } catch (...) {
        return false;
    }
    if (mode >= 0) return false;
    dir = lat->basis_index(name);
    exp = 1;
    std::string rest = strip(fac.substr(close + 1));
    if (!rest.empty()) {
        if (rest[0] != '^') return false;
        exp = std::stoi(strip(rest.substr(1)));
        if (exp < 1) return false;
    }
    return true;
}

}  // namespace

StateVector parse_state(const std::string& text, LatticePtr lat) {
    StateVector v(lat);
    std::string s = strip(text);
    if (s == "0" || s.empty()) return v;
    for (auto& [sign, termstr] : split_top(s, "+-")) {
        std::string term = strip(termstr);
        if (term.empty()) {
            if (sign == '\0') continue;
            throw error("parse_state: empty term");
        }
        Scalar coeff(1L);
        if (sign == '-') coeff = -coeff;
        FockMonomial m;
        m.charge = Weight::zero(lat);
        bool saw_charge = false;
        for (auto& [fsep, facstr] : split_top(term, "*")) {
            std::string fac = strip(facstr);
            if (fac.empty()) throw error("parse_state: empty factor in '" + term + "'");
            if (fac.size() >= 2 && fac[0] == 'e' && fac[1] == '[') {
                if (fac.back() != ']') throw error("parse_state: unterminated e[...]");
                if (saw_charge) throw error("parse_state: repeated charge factor");
                saw_charge = true;
                m.charge = parse_charge(fac.substr(2, fac.size() - 3), lat);
                continue;
            }
            int dir, mode, exp;
            if (try_parse_osc(fac, lat, dir, mode, exp)) {
                for (int i = 0; i < exp; ++i) {
                    Osc o{dir, mode};
                    m.osc.insert(std::upper_bound(m.osc.begin(), m.osc.end(), o), o);
                }
                continue;
            }
            coeff *= parse_scalar(fac);
        }
        v.add_term(m, coeff);
    }
    return v;
}

}  // namespace vxa

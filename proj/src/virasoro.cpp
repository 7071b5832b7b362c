#include "vxa/virasoro.hpp"

#include "vxa/linalg.hpp"

#include <sstream>

namespace vxa {

namespace {

StateVector vacuum_of(const LatticePtr& l) {
    return StateVector::exp_charge(Weight::zero(l));
}

Weight alpha_of(const LatticePtr& l) {
    // the distinguished direction: a in rank 1, a1 + a2 in rank 2
    Weight w = Weight::basis(l, 0);
    for (int i = 1; i < l->rank; ++i) w = w + Weight::basis(l, i);
    return w;
}

StateVector omega_heisenberg(const LatticePtr& l, int p) {
    Weight a = alpha_of(l);
    StateVector vac = vacuum_of(l);
    return heis_apply(a, -1, heis_apply(a, -1, vac)).scale(Scalar(Rat(1, 4 * p))) +
           heis_apply(a, -2, vac).scale(Scalar(Rat(p - 1, 2 * p)));
}

// h v = c v for some Scalar c?  Returns true and sets c.
bool scalar_multiple(const StateVector& v, const StateVector& hv, Scalar& c) {
    if (hv.is_zero()) {
        c = Scalar();
        return true;
    }
    if (v.is_zero()) return false;
    auto& [m0, c0] = *v.terms().begin();
    auto it = hv.terms().find(m0);
    if (it == hv.terms().end()) return false;
    c = it->second / c0;
    return hv == v.scale(c);
}

}  // namespace

ConformalVector build_standard_omega(int p) {
    if (p < 1) throw error("build_standard_omega: p must be >= 1");
    auto l = LatticeSpec::rank1(p);
    return as_conformal(omega_heisenberg(l, p));
}

ConformalVector build_deformed_omega_prime(int p) {
    if (p < 2) throw error("deformed realization needs p >= 2");
    auto l = LatticeSpec::rank2_deformed(p);
    return as_conformal(omega_heisenberg(l, p));
}

ConformalVector build_deformed_omega(int p) {
    if (p < 2) throw error("build_deformed_omega: p must be >= 2");
    auto l = LatticeSpec::rank2_deformed(p);
    Weight a2 = Weight::basis(l, 1);
    StateVector w = omega_heisenberg(l, p) +
                    StateVector::exp_charge(a2.scale(Scalar(-2L))).scale(Scalar(Rat(p - 1, p)));
    return as_conformal(w);
}

ConformalCheck verify_conformal(const StateVector& w) {
    ConformalCheck res;
    if (w.is_zero()) {
        res.detail = "zero vector";
        return res;
    }
    StateVector vac = vacuum_of(w.lattice());
    auto check = [&](const StateVector& got, const StateVector& want,
                     const std::string& label) {
        if (got == want) return true;
        if (res.detail.empty()) res.detail = label;
        return false;
    };
    bool ok = true;
    try {
        ok &= check(general_mode(w, 0L, w), translate(w), "w_0 w != T w");
        ok &= check(general_mode(w, 1L, w), w.scale(Scalar(2L)), "w_1 w != 2 w");
        ok &= check(general_mode(w, 2L, w), StateVector(w.lattice()), "w_2 w != 0");
        StateVector w3 = general_mode(w, 3L, w);
        Scalar half_c;
        if (!scalar_multiple(vac, w3, half_c)) {
            ok = false;
            if (res.detail.empty()) res.detail = "w_3 w is not a multiple of the vacuum";
        } else {
            res.c = half_c * Scalar(2L);
        }
        int bound = 2 * w.degree() + 4;
        for (int n = 4; n <= bound; ++n)
            ok &= check(general_mode(w, long(n), w), StateVector(w.lattice()),
                        "w_" + std::to_string(n) + " w != 0");
    } catch (const error& e) {
        ok = false;
        if (res.detail.empty()) res.detail = e.what();
    }
    res.is_conformal = ok;
    return res;
}

ConformalVector as_conformal(const StateVector& w) {
    ConformalCheck chk = verify_conformal(w);
    if (!chk.is_conformal)
        throw error("not a conformal vector: " + chk.detail);
    return ConformalVector{w, chk.c, true};
}

StateVector L(int n, const StateVector& v, const ConformalVector& w) {
    return general_mode(w.state, long(n) + 1, v);
}

PrimaryCheck primary_check(const StateVector& v, const ConformalVector& w) {
    PrimaryCheck res;
    if (v.is_zero()) return res;
    StateVector l0 = L(0, v, w);
    Scalar h;
    if (!scalar_multiple(v, l0, h)) return res;
    res.weight = h;
    for (int n = 1; n <= v.degree() + 2; ++n)
        if (!L(n, v, w).is_zero()) return res;
    res.is_primary = true;
    return res;
}

// ---------------------------------------------------------------- PBW

std::vector<std::vector<int>> partitions_of(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    // descending partitions
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int k = std::min(rest, maxpart); k >= 1; --k) {
            cur.push_back(k);
            self(self, rest - k, k);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

StateVector apply_L_word(const std::vector<int>& word, const StateVector& v,
                         const ConformalVector& w) {
    StateVector r = v;
    for (size_t i = word.size(); i-- > 0;) r = L(-word[i], r, w);
    return r;
}

std::string PBWVector::str() const {
    if (coeffs.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto& [word, c] : coeffs) {
        if (!first) out << " + ";
        first = false;
        out << "(" << c.str() << ")";
        for (size_t i = 0; i < word.size();) {
            size_t j = i;
            while (j < word.size() && word[j] == word[i]) ++j;
            out << "*L(-" << word[i] << ")";
            if (j - i > 1) out << "^" << (j - i);
            i = j;
        }
        out << "*" << base.str();
    }
    return out.str();
}

namespace {

// grade-g conversion matrix: columns are PBW words applied to e^lambda,
// rows indexed by Fock monomials
struct GradeSystem {
    std::vector<std::vector<int>> words;
    std::vector<FockMonomial> monos;
    Matrix A;  // rows x cols
};

GradeSystem grade_system(int g, const Weight& lambda, const ConformalVector& w) {
    GradeSystem sys;
    sys.words = partitions_of(g);
    StateVector hw = StateVector::exp_charge(lambda);
    std::vector<StateVector> cols;
    std::map<FockMonomial, size_t> index;
    for (auto& word : sys.words) {
        StateVector col = apply_L_word(word, hw, w);
        for (auto& [m, c] : col.terms())
            if (!index.count(m)) {
                index[m] = sys.monos.size();
                sys.monos.push_back(m);
            }
        cols.push_back(std::move(col));
    }
    sys.A.assign(sys.monos.size(), std::vector<Scalar>(sys.words.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (auto& [m, c] : cols[j].terms()) sys.A[index.at(m)][j] = c;
    return sys;
}

}  // namespace

PBWVector pbw_convert(const StateVector& v, const ConformalVector& w) {
    PBWVector out;
    if (v.is_zero()) {
        out.base = v;
        return out;
    }
    Weight lambda = v.the_charge();
    out.base = StateVector::exp_charge(lambda);
    // split by Heisenberg degree
    std::map<int, StateVector> by_grade;
    for (auto& [m, c] : v.terms()) {
        auto& sv = by_grade[m.degree()];
        if (sv.lattice() == nullptr) sv = StateVector(v.lattice());
        sv.add_term(m, c);
    }
    for (auto& [g, vg] : by_grade) {
        if (g == 0) {
            out.coeffs[{}] = vg.terms().begin()->second;
            continue;
        }
        GradeSystem sys = grade_system(g, lambda, w);
        std::map<FockMonomial, size_t> index;
        for (size_t i = 0; i < sys.monos.size(); ++i) index[sys.monos[i]] = i;
        std::vector<Scalar> b(sys.monos.size());
        for (auto& [m, c] : vg.terms()) {
            auto it = index.find(m);
            if (it == index.end()) {
                // target monomial unreachable: zero row makes the system inconsistent
                index[m] = sys.monos.size();
                sys.monos.push_back(m);
                sys.A.emplace_back(sys.words.size());
                b.emplace_back();
                it = index.find(m);
            }
            b[it->second] = c;
        }
        auto res = solve_linear(sys.A, b);
        if (!res.consistent && res.rank == int(sys.words.size()))
            throw error("pbw_convert: state outside the Virasoro span at grade " +
                        std::to_string(g));
        if (!res.consistent || res.rank < int(sys.words.size())) {
            // witness: same grade determinant with a generic highest weight
            auto lat = v.lattice();
            Weight a = Weight::basis(lat, 0);
            Scalar two_p = pairing(a, a);
            Scalar tau = Scalar::var("tau_witness");
            Weight lam_sym = a.scale(tau / two_p);
            GradeSystem wsys = grade_system(g, lam_sym, w);
            Scalar det = wsys.A.size() == wsys.words.size()
                             ? det_bareiss(wsys.A)
                             : Scalar();
            throw error("pbw_convert: singular grade-" + std::to_string(g) +
                        " system (non-generic highest weight); witness determinant in "
                        "tau_witness: " +
                        det.str());
        }
        for (size_t j = 0; j < sys.words.size(); ++j)
            if (!res.solution[j].is_zero()) out.coeffs[sys.words[j]] = res.solution[j];
    }
    return out;
}

StateVector pbw_expand(const PBWVector& pv, const ConformalVector& w) {
    StateVector r(pv.base.lattice());
    for (auto& [word, c] : pv.coeffs) r += apply_L_word(word, pv.base, w).scale(c);
    return r;
}

}  // namespace vxa

#include "vxa/vertexops.hpp"

#include <algorithm>
#include <tuple>

namespace vxa {

namespace {

Rat binom_nonneg(long n, long k) {
    // binomial with n, k >= 0
    Rat r(1);
    for (long i = 0; i < k; ++i) r *= Rat(n - i, i + 1);
    r.canonicalize();
    return r;
}

// single-charge-sector state: all terms share `charge`, so cached values
// store only the oscillator parts
using OscVec = std::vector<Osc>;
struct SectorState {
    Weight charge;
    std::map<OscVec, Scalar> terms;
    bool is_zero() const { return terms.empty(); }
};

SectorState compact(const StateVector& v) {
    SectorState s;
    if (v.terms().empty()) {
        s.charge = Weight::zero(v.lattice());
        return s;
    }
    s.charge = v.terms().begin()->first.charge;
    for (auto& [m, c] : v.terms()) s.terms.emplace(m.osc, c);
    return s;
}

StateVector to_state(const SectorState& s, const LatticePtr& lat) {
    StateVector v(lat);
    v.add_sector_scaled(s.charge, s.terms, Scalar(1L));
    return v;
}

// ---- caches ----------------------------------------------------------------
// Mode application is linear in both arguments and heavily repeats monomial
// pairs inside suite computations; everything below is memoized per monomial.
// The caches are generational: when the live generation exceeds its budget it
// becomes the old generation and the previous old one is dropped; hits in the
// old generation move the node back.  Trimming happens at the public entry
// points only, so references handed out during a recursion stay valid.

using schur_cache_key = std::pair<const void*, std::vector<Scalar>>;
thread_local std::map<schur_cache_key, std::vector<StateVector>, std::less<>> schur_states;

using ann_key = std::tuple<const void*, std::vector<Scalar>, FockMonomial>;
using ann_map = std::map<ann_key, std::vector<SectorState>, std::less<>>;
thread_local ann_map ann_cache, ann_cache_old;

using mode_key = std::tuple<const void*, FockMonomial, Scalar, FockMonomial>;
using mode_map = std::map<mode_key, SectorState, std::less<>>;
thread_local mode_map mode_cache, mode_cache_old;

// approximate live-generation sizes, in stored terms
thread_local size_t mode_cache_terms = 0;
thread_local size_t ann_cache_terms = 0;

void maybe_trim_caches() {
    if (mode_cache_terms > 4500000) {
        mode_cache_old = std::move(mode_cache);
        mode_cache.clear();
        mode_cache_terms = 0;
    }
    if (ann_cache_terms > 1500000) {
        ann_cache_old = std::move(ann_cache);
        ann_cache.clear();
        ann_cache_terms = 0;
    }
}

// lookup with old-generation fallback; hits migrate back to the live map
template <class Map, class Probe>
typename Map::iterator cache_find(Map& live, Map& old, const Probe& probe) {
    auto it = live.find(probe);
    if (it != live.end()) return it;
    auto ot = old.find(probe);
    if (ot == old.end()) return live.end();
    return live.insert(old.extract(ot)).position;
}

const std::vector<StateVector>& schur_ladder(const Weight& beta, int n) {
    auto& vec = schur_states[{beta.lat.get(), beta.coords}];
    if (vec.empty()) vec.push_back(StateVector::exp_charge(Weight::zero(beta.lat)));
    while (int(vec.size()) <= n) {
        int d = int(vec.size());
        StateVector acc(beta.lat);
        for (int m = 1; m <= d; ++m) acc += heis_apply(beta, -m, vec[size_t(d - m)]);
        vec.push_back(acc.scale(Scalar(Rat(1, d))));
    }
    return vec;
}

// C_d ladder: x^{-d} part of exp(-sum_{m>0} beta(m) x^{-m}/m) applied to mono
const std::vector<SectorState>& ann_ladder(const Weight& beta, const FockMonomial& mono,
                                           const LatticePtr& lat) {
    const void* lp = lat.get();
    if (auto it = cache_find(ann_cache, ann_cache_old, std::tie(lp, beta.coords, mono));
        it != ann_cache.end())
        return it->second;
    ann_key key{lp, beta.coords, mono};
    int deg = mono.degree();
    std::vector<StateVector> lad(size_t(deg) + 1, StateVector(lat));
    lad[0].add_term(mono, Scalar(1L));
    for (int d = 1; d <= deg; ++d) {
        StateVector acc(lat);
        for (int m = 1; m <= d; ++m) acc -= heis_apply(beta, m, lad[size_t(d - m)]);
        lad[size_t(d)] = acc.scale(Scalar(Rat(1, d)));
    }
    std::vector<SectorState> ann;
    ann.reserve(lad.size());
    for (auto& s : lad) {
        ann.push_back(compact(s));
        ann_cache_terms += ann.back().terms.size() + 1;
    }
    return ann_cache.emplace(std::move(key), std::move(ann)).first->second;
}

// single-monomial e^beta mode action; result degree is deg(mono) - k - 1
void lattice_mode_mono(const Weight& beta, long k, const FockMonomial& mono,
                       const Scalar& coeff, const LatticePtr& lat, StateVector& out) {
    int deg = mono.degree();
    if (k > long(deg) - 1) return;
    Weight mono_charge(lat, mono.charge.coords);
    int sign = epsilon(beta, mono_charge);
    Weight new_charge = mono_charge + beta;
    Scalar c0 = (sign < 0) ? -coeff : coeff;
    const std::vector<SectorState>& ann = ann_ladder(beta, mono, lat);
    std::map<OscVec, Scalar> acc;
    OscVec m2;
    for (int d = 0; d <= deg; ++d) {
        long e = d - k - 1;
        if (e < 0 || ann[size_t(d)].is_zero()) continue;
        const StateVector& sch = schur_ladder(beta, int(e))[size_t(e)];
        for (auto& [sm, sc] : sch.terms())
            for (auto& [am, ac] : ann[size_t(d)].terms) {
                m2.clear();
                m2.reserve(am.size() + sm.osc.size());
                std::merge(am.begin(), am.end(), sm.osc.begin(), sm.osc.end(),
                           std::back_inserter(m2));
                Scalar& slot = acc[m2];
                slot += sc * ac;
                if (slot.is_zero()) acc.erase(m2);
            }
    }
    out.add_sector_scaled(new_charge, acc, c0);
}

StateVector lattice_mode_impl(const Weight& beta, const Scalar& n, const StateVector& v) {
    StateVector result(v.lattice());
    for (auto& [mono, coeff] : v.terms()) {
        Scalar kS = n + pairing(beta, Weight(v.lattice(), mono.charge.coords));
        if (!kS.is_integer())
            throw error("lattice_mode: mode index " + n.str() +
                        " incompatible with charge sector " + mono.charge.str());
        lattice_mode_mono(beta, kS.to_long(), mono, coeff, v.lattice(), result);
    }
    return result;
}

// u_{(m)} v for single monomials is concentrated in oscillator degree
// deg u + deg v - k - 1 with k = m + <beta_u, gamma_v>; this gives exact
// truncation bounds.  Returns a reference into the cache.
const SectorState& term_mode_mono(const FockMonomial& u, const Scalar& n,
                                  const FockMonomial& vm, const LatticePtr& lat) {
    const void* lp = lat.get();
    if (auto it = cache_find(mode_cache, mode_cache_old, std::tie(lp, u, n, vm));
        it != mode_cache.end())
        return it->second;
    mode_key key{lp, u, n, vm};

    Scalar kS = n + pairing(Weight(lat, u.charge.coords), Weight(lat, vm.charge.coords));
    if (!kS.is_integer())
        throw error("general_mode: mode index " + n.str() +
                    " incompatible with charge sector " + vm.charge.str());
    long k = kS.to_long();

    StateVector result(lat);
    if (k > long(u.degree()) + long(vm.degree()) - 1) {
        // empty
    } else if (u.osc.empty()) {
        lattice_mode_mono(Weight(lat, u.charge.coords), k, vm, Scalar(1L), lat, result);
    } else {
        // u = b_i(-ku) u'; iterate formula
        //   (a_{(-ku)} b)_{(n)} = sum_j C(ku+j-1,j) [ a_{(-ku-j)} b_{(n+j)}
        //                         - (-1)^ku b_{(n-ku-j)} a_{(j)} ]
        Osc head = u.osc.front();
        long ku = -head.mode;
        FockMonomial rest = u;
        rest.osc.erase(rest.osc.begin());
        Weight ei = Weight::basis(lat, head.dir);

        long jmax = long(rest.degree()) + long(vm.degree()) - 1 - k;
        for (long j = 0; j <= jmax; ++j) {
            const SectorState& inner = term_mode_mono(rest, n + Scalar(j), vm, lat);
            if (inner.is_zero()) continue;
            Rat c = binom_nonneg(ku + j - 1, j);
            result.add_scaled(heis_apply(ei, int(-ku - j), to_state(inner, lat)),
                              Scalar(c));
        }
        StateVector vstate(lat);
        vstate.add_term(vm, Scalar(1L));
        long dv = vm.degree();
        int par = (ku % 2 == 0) ? 1 : -1;
        for (long j = 0; j <= dv; ++j) {
            StateVector hv = heis_apply(ei, int(j), vstate);
            if (hv.is_zero()) continue;
            Rat c = binom_nonneg(ku + j - 1, j);
            if (par > 0) c = -c;
            for (auto& [hm, hc] : hv.terms()) {
                const SectorState& inner =
                    term_mode_mono(rest, n - Scalar(ku) - Scalar(j), hm, lat);
                result.add_sector_scaled(inner.charge, inner.terms, hc * Scalar(c));
            }
        }
    }
    mode_cache_terms += result.terms().size() + u.osc.size() + vm.osc.size() + 4;
    return mode_cache.emplace(std::move(key), compact(result)).first->second;
}

}  // namespace

StateVector apply_schur(const Weight& beta, int n, const StateVector& v) {
    if (n < 0) return StateVector(v.lattice());
    // S_n(beta) is a pure creation polynomial: applying it to a monomial is an
    // oscillator-multiset merge
    const StateVector& s = schur_ladder(beta, n)[size_t(n)];
    StateVector r(v.lattice());
    for (auto& [sm, sc] : s.terms())
        for (auto& [vm, vc] : v.terms()) {
            FockMonomial m2 = vm;
            m2.osc.insert(m2.osc.end(), sm.osc.begin(), sm.osc.end());
            std::sort(m2.osc.begin(), m2.osc.end());
            r.add_term(m2, sc * vc);
        }
    return r;
}

StateVector schur_exp(const Weight& beta, int n) {
    if (n < 0) return StateVector(beta.lat);
    return schur_ladder(beta, n)[size_t(n)];
}

void clear_mode_cache() {
    mode_cache.clear();
    mode_cache_old.clear();
    ann_cache.clear();
    ann_cache_old.clear();
    schur_states.clear();
    mode_cache_terms = 0;
    ann_cache_terms = 0;
}

StateVector lattice_mode(const Weight& beta, const Scalar& n, const StateVector& v) {
    maybe_trim_caches();
    return lattice_mode_impl(beta, n, v);
}

StateVector general_mode(const StateVector& u, const Scalar& n, const StateVector& v) {
    maybe_trim_caches();
    StateVector result(v.lattice());
    for (auto& [umono, uc] : u.terms())
        for (auto& [vmono, vc] : v.terms()) {
            const SectorState& s = term_mode_mono(umono, n, vmono, v.lattice());
            result.add_sector_scaled(s.charge, s.terms, uc * vc);
        }
    return result;
}

StateVector residue_mode(const StateVector& u, const std::map<int, Rat>& f,
                         const StateVector& v) {
    StateVector result(v.lattice());
    for (auto& [m, c] : f) {
        if (c == 0) continue;
        result += general_mode(u, Scalar(long(m)), v).scale(Scalar(c));
    }
    return result;
}

std::map<int, Rat> binomial_weight_poly(int w, int k) {
    std::map<int, Rat> f;
    for (int i = 0; i <= w; ++i) {
        Rat c = binom_nonneg(w, i);
        if (c != 0) f[i - k] += c;
    }
    return f;
}

}  // namespace vxa

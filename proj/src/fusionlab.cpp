#include "vxa/fusionlab.hpp"

#include "vxa/virasoro.hpp"

#include <algorithm>
#include <sstream>

namespace vxa {

namespace {

Scalar S(long n) { return Scalar(n); }

Scalar h_of(const Scalar& t) { return t * (t - S(2)) / S(8); }

// generalized L(0)-eigenvalue of e^delta: the diagonal coefficient of the
// (lower-triangular) L(0) action on its charge sector
Scalar exp_weight(const Weight& delta, const ConformalVector& w) {
    StateVector e = StateVector::exp_charge(delta);
    StateVector img = L(0, e, w);
    auto it = img.terms().find(e.terms().begin()->first);
    return it == img.terms().end() ? Scalar() : it->second;
}

bool is_int(const Scalar& x) { return x.is_rational() && x.is_integer(); }

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

}  // namespace

StateVector intertwiner_mode(const StateVector& u, const Scalar& r, const StateVector& v) {
    return general_mode(u, r, v);
}

ModuleHandle fusion_source_left(const Scalar& t) {
    auto l = LatticeSpec::rank2_deformed(2);
    return ModuleHandle{ModuleKind::M_t, {{"t", t}}, v_rs(l, t, S(0)), l};
}

ModuleHandle fusion_source_right(const Scalar& t) {
    auto l = LatticeSpec::rank2_deformed(2);
    StateVector gen = v_rs(l, t - S(1), S(1)) +
                      v_rs(l, t - S(1), S(-1)).scale(S(1) / (t - S(2)));
    return ModuleHandle{ModuleKind::M_t, {{"t", t}}, gen, l};
}

std::vector<std::pair<StateVector, int>> module_span(const ModuleHandle& m,
                                                     int max_degree) {
    GeneratorSet g = build_generators(2, Realization::deformed_rank2);
    ConformalVector w = build_deformed_omega(2);
    std::vector<std::pair<StateVector, int>> out = {{m.generator, 0}};
    SpanBasis<FockMonomial> sb;
    sb.add(m.generator.terms());
    // fixpoint over all grade-compatible omega and H modes
    for (size_t i = 0; i < out.size(); ++i) {
        auto [u, lev] = out[i];
        for (int n = lev - max_degree; n <= lev; ++n) {
            int target = lev - n;
            StateVector lw = L(n, u, w);
            if (!lw.is_zero() && sb.add(lw.terms())) out.push_back({lw, target});
            StateVector hw = H_mode(g, n, u);
            if (!hw.is_zero() && sb.add(hw.terms())) out.push_back({hw, target});
        }
    }
    return out;
}

FusionSpan fusion_span(const ModuleHandle& m1, const ModuleHandle& m2, int max_degree) {
    ConformalVector w = build_deformed_omega(2);
    FusionSpan fs;
    fs.max_degree = max_degree;
    fs.lat = m1.lattice;
    fs.sources = module_span(m1, max_degree);

    const StateVector& v = m2.generator;
    Weight beta0 = m1.generator.terms().begin()->first.charge;
    Weight gamma0 = v.terms().begin()->first.charge;
    Scalar h1 = exp_weight(beta0, w);
    Scalar r_ref = -pairing(beta0, gamma0);

    // generalized weights of the generator components and of the target
    // top sectors beta0 + gamma
    std::vector<Scalar> vweights, tops;
    for (auto& gamma : v.charge_sectors()) {
        vweights.push_back(exp_weight(gamma, w));
        tops.push_back(exp_weight(beta0 + gamma, w));
    }

    for (size_t i = 0; i < fs.sources.size(); ++i) {
        auto& [u, lev] = fs.sources[i];
        Scalar wt_u = h1 + S(lev);
        std::set<Rat> modes;
        for (auto& wv : vweights)
            for (auto& top : tops)
                for (int d = 0; d <= max_degree; ++d) {
                    Scalar r = wt_u + wv - S(1) - top - S(d);
                    if (is_int(r - r_ref)) modes.insert(r.to_rational());
                }
        for (auto& rq : modes) {
            Scalar r{rq};
            StateVector x = intertwiner_mode(u, r, v);
            if (!x.is_zero() && fs.span.add(x.terms()))
                fs.provenance.push_back({int(i), r});
        }
    }
    for (auto& [pivot, row] : fs.span.rows()) {
        StateVector b(fs.lat);
        for (auto& [mono, c] : row) b.add_term(mono, c);
        fs.basis.push_back(std::move(b));
    }
    return fs;
}

namespace {

// dimension of the space of simultaneous singular vectors inside the span
int singular_dim(const FusionSpan& fs, const GeneratorSet& g, const ConformalVector& w) {
    std::vector<std::vector<StateVector>> images;
    for (auto& b : fs.basis) {
        std::vector<StateVector> img = {L(1, b, w), L(2, b, w)};
        for (int n = 1; n <= 3; ++n) img.push_back(H_mode(g, n, b));
        images.push_back(std::move(img));
    }
    std::map<std::pair<int, FockMonomial>, int> row_of;
    for (auto& img : images)
        for (size_t k = 0; k < img.size(); ++k)
            for (auto& [mono, c] : img[k].terms())
                row_of.try_emplace({int(k), mono}, int(row_of.size()));
    Matrix A(row_of.size(), std::vector<Scalar>(fs.basis.size()));
    for (size_t j = 0; j < images.size(); ++j)
        for (size_t k = 0; k < images[j].size(); ++k)
            for (auto& [mono, c] : images[j][k].terms())
                A[row_of.at({int(k), mono})][j] = c;
    LinSolveResult res = solve_linear(A, std::vector<Scalar>(row_of.size()));
    return int(res.nullspace.size());
}

bool annihilated(const StateVector& x, const GeneratorSet& g, const ConformalVector& w) {
    if (!L(1, x, w).is_zero() || !L(2, x, w).is_zero()) return false;
    for (int n = 1; n <= 3; ++n)
        if (!H_mode(g, n, x).is_zero()) return false;
    return true;
}

}  // namespace

Report verify_fusion_p2(const Rat& t1q, const Rat& t2q, int max_degree) {
    if (t1q.get_den() == 1 || t2q.get_den() == 1 || Rat(t1q + t2q).get_den() == 1)
        throw error("verify_fusion_p2: t1, t2, t1 + t2 must all be non-integral");
    clear_mode_cache();
    Scalar t1{t1q}, t2{t2q};
    Report rep;
    rep.suite = "fusion-p2";
    rep.params["t1"] = rat_str(t1q);
    rep.params["t2"] = rat_str(t2q);
    rep.params["max_degree"] = std::to_string(max_degree);

    GeneratorSet g = build_generators(2, Realization::deformed_rank2);
    ConformalVector w = build_deformed_omega(2);
    ModuleHandle m1 = fusion_source_left(t1);
    ModuleHandle m2 = fusion_source_right(t2);
    auto l = m1.lattice;
    FusionSpan fs = fusion_span(m1, m2, max_degree);
    rep.params["span_dim"] = std::to_string(fs.basis.size());

    Scalar tt = t1 + t2;
    rep.params["target1_h"] = h_of(tt).str();
    rep.params["target1_h0"] = generalized_binomial(tt, 3).str();
    rep.params["target2_h"] = h_of(tt - S(2)).str();
    rep.params["target2_h0"] = generalized_binomial(tt - S(2), 3).str();

    // exact sector bookkeeping: all charges sit on (beta0 + gamma0) + lattice
    Weight delta0 = m1.generator.the_charge() + v_rs(l, t2 - S(1), S(1)).the_charge();
    bool sectors_ok = true;
    for (auto& b : fs.basis)
        for (auto& [mono, c] : b.terms())
            for (auto& x : (mono.charge - delta0).coords)
                sectors_ok = sectors_ok && is_int(x);
    rep.add("span charges lie on the expected sector lattice", sectors_ok);

    StateVector v1 = v_rs(l, tt - S(1), S(1));
    StateVector vm = v_rs(l, tt - S(1), S(-1));
    StateVector vplus = v1 + vm.scale(S(1) / (tt - S(2)));
    StateVector wvec = v1 + vm.scale(S(1) / (t2 - S(2)));
    rep.add("w = v+ + (t1/((t2-2)(t1+t2-2))) v-",
            wvec == vplus + vm.scale(t1 / ((t2 - S(2)) * (tt - S(2)))));
    rep.add("w in the fusion span", fs.contains(wvec));
    rep.add("v+ in the fusion span", fs.contains(vplus));
    rep.add("v- in the fusion span", fs.contains(vm));

    auto hw_check = [&](const char* name, const StateVector& x, const Scalar& h,
                        const Scalar& h0) {
        bool ok = annihilated(x, g, w) && L(0, x, w) == x.scale(h) &&
                  H_mode(g, 0, x) == x.scale(h0);
        rep.add(name, ok);
    };
    hw_check("v+ is highest weight with data of the first target", vplus, h_of(tt),
             generalized_binomial(tt, 3));
    hw_check("v- is highest weight with data of the second target", vm,
             h_of(tt - S(2)), generalized_binomial(tt - S(2), 3));

    int sdim = singular_dim(fs, g, w);
    rep.add("exactly two singular vectors in the truncated span", sdim == 2,
            "dimension " + std::to_string(sdim));
    return rep;
}

Report log_probe(const Rat& t1q, const Rat& t2q, int max_degree) {
    if (Rat(t1q + t2q).get_den() != 1)
        throw error("log_probe: t1 + t2 must be an integer");
    for (const Rat& t : {t1q, t2q})
        if (t.get_den() == 1 && mpz_even_p(t.get_num_mpz_t()))
            throw error("log_probe: integral inputs must be odd");
    clear_mode_cache();
    Scalar t1{t1q}, t2{t2q}, T = t1 + t2;
    Report rep;
    rep.suite = "log-probe";
    rep.params["t1"] = rat_str(t1q);
    rep.params["t2"] = rat_str(t2q);
    rep.params["max_degree"] = std::to_string(max_degree);

    ConformalVector w = build_deformed_omega(2);
    ModuleHandle m1 = fusion_source_left(t1);
    auto l = m1.lattice;
    ModuleHandle m2{ModuleKind::P_r, {{"r", t2}}, v_rs(l, t2, S(1)), l};
    FusionSpan fs = fusion_span(m1, m2, max_degree);
    rep.params["span_dim"] = std::to_string(fs.basis.size());

    StateVector e1 = v_rs(l, T, S(1));
    StateVector em = v_rs(l, T, S(-1));
    rep.note("target", "cyclic module over v_{" + T.str() + ",1}");
    rep.note("top slice vector v_{T,1} in span", fs.contains(e1) ? "yes" : "no");
    rep.note("top slice vector v_{T,-1} in span", fs.contains(em) ? "yes" : "no");

    // L(0) on the top slice {v_{T,1}, v_{T,-1}} is lower triangular
    Scalar hp = h_r1(T + S(2)), hm = h_r1(T);
    StateVector l1 = L(0, e1, w);
    StateVector lm = L(0, em, w);
    bool tri = l1 == e1.scale(hp) + em.scale(Scalar(Rat(1, 2))) && lm == em.scale(hm);
    rep.note("L(0) on the top slice",
             std::string("[[h_+, 0], [1/2, h_-]] with h_+ = ") + hp.str() +
                 ", h_- = " + hm.str() + (tri ? "" : " (unexpected shape)"));
    if (hp == hm)
        rep.note("Jordan structure",
                 "non-diagonalizable: size-2 Jordan block at eigenvalue " + hp.str());
    else
        rep.note("Jordan structure", "diagonalizable: distinct eigenvalues " + hp.str() +
                                         ", " + hm.str());
    return rep;
}

std::set<long> orbifold_fusion_table(int m, int p, long i1, long i2) {
    if (m < 1 || p < 1) throw error("orbifold_fusion_table: m, p must be positive");
    long mod = 2L * p * m * m;
    for (long i : {i1, i2})
        if (i < 0 || i >= mod)
            throw error("orbifold_fusion_table: label " + std::to_string(i) +
                        " outside 0.." + std::to_string(mod - 1));
    auto reject = [&](const char* what, long val) {
        throw error(std::string("orbifold_fusion_table: ") + what + " = " +
                    std::to_string(val) + " lies in " + std::to_string(m) + "Z");
    };
    if (i1 % m == 0) reject("i1", i1);
    if (i2 % m == 0) reject("i2", i2);
    if ((i1 + i2) % m == 0) reject("i1 + i2", i1 + i2);
    auto norm = [&](long x) { return ((x % mod) + mod) % mod; };
    return {norm(i1 + i2), norm(i1 + i2 - 2 * m)};
}

Report orbifold_suite(int m, int p) {
    Report rep;
    rep.suite = "orbifold";
    rep.params["m"] = std::to_string(m);
    rep.params["p"] = std::to_string(p);
    if (m == 1) {
        rep.note("vacuous hypotheses", "every label lies in 1Z; no admissible pairs");
        return rep;
    }
    if (m == 2) {
        rep.note("vacuous hypotheses",
                 "labels outside 2Z are odd, so i1 + i2 is always even; no admissible pairs");
        return rep;
    }
    long mod = 2L * p * m * m;
    bool sym_ok = true, size_ok = true, cong_ok = true;
    long pairs = 0;
    for (long i1 = 0; i1 < mod; ++i1)
        for (long i2 = i1; i2 < mod; ++i2) {
            if (i1 % m == 0 || i2 % m == 0 || (i1 + i2) % m == 0) continue;
            ++pairs;
            auto t12 = orbifold_fusion_table(m, p, i1, i2);
            sym_ok = sym_ok && t12 == orbifold_fusion_table(m, p, i2, i1);
            size_ok = size_ok && t12.size() == 2;
            for (long i3 : t12)
                cong_ok = cong_ok && ((i3 - i1 - i2) % (2 * m) == 0);
        }
    rep.params["pairs"] = std::to_string(pairs);
    rep.add("table symmetric in (i1, i2)", sym_ok);
    rep.add("two labels per admissible pair", size_ok);
    rep.add("labels congruent to i1 + i2 mod 2m", cong_ok);
    return rep;
}

}  // namespace vxa

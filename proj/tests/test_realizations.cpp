#include "doctest.h"

#include "vxa/realizations.hpp"

using namespace vxa;

namespace {
Scalar S(long n) { return Scalar(n); }

// attach a lattice charge to every term of a charge-zero state
StateVector with_charge(const StateVector& v, const Weight& g) {
    StateVector out(v.lattice());
    for (auto& [m, c] : v.terms()) {
        FockMonomial m2 = m;
        m2.charge = m.charge + g;
        out.add_term(m2, c);
    }
    return out;
}
}  // namespace

TEST_CASE("build_screening summands") {
    ScreeningOperator q = build_screening(2, Realization::standard_rank1);
    REQUIRE(q.summands.size() == 1);
    CHECK(pairing(q.summands[0], q.summands[0]) == S(4));

    ScreeningOperator s = build_screening(2, Realization::deformed_rank2);
    REQUIRE(s.summands.size() == 2);
    auto l = s.summands[0].lat;
    Weight a1 = Weight::basis(l, 0), a2 = Weight::basis(l, 1);
    CHECK(s.summands[0] == a1 + a2);
    CHECK(s.summands[1] == a1 - a2);
    CHECK(s.apply(StateVector::exp_charge(Weight::zero(l))).is_zero());
}

TEST_CASE("screening_check passes for standard and deformed realizations") {
    {
        Report rep = screening_check(build_screening(2, Realization::standard_rank1),
                                     build_standard_omega(2), 3, 2);
        CHECK(rep.pass());
    }
    for (int p = 2; p <= 3; ++p) {
        Report rep = screening_check(build_screening(p, Realization::deformed_rank2),
                                     build_deformed_omega(p), p == 2 ? 3 : 2, 2);
        INFO(rep.str());
        CHECK(rep.pass());
    }
    // the closed-form part alone for p = 4, 5
    for (int p = 4; p <= 5; ++p) {
        ScreeningOperator s = build_screening(p, Realization::deformed_rank2);
        CHECK(s.apply(build_deformed_omega(p).state).is_zero());
    }
}

TEST_CASE("generators in both realizations") {
    {
        GeneratorSet g = build_generators(2, Realization::standard_rank1);
        auto l = g.gen.at("F").lattice();
        Weight a = Weight::basis(l, 0);
        CHECK(g.gen.at("F") == StateVector::exp_charge(-a));
        // H = Q e^{-a} = eps(a,-a) S_3(a)
        CHECK(g.gen.at("H") == schur_exp(a, 3).scale(S(epsilon(a, -a))));
    }
    {
        GeneratorSet g = build_generators(2, Realization::deformed_rank2);
        auto l = g.gen.at("F").lattice();
        Weight a1 = Weight::basis(l, 0), a2 = Weight::basis(l, 1);
        Weight a = a1 + a2;
        Weight half = a.scale(Scalar(Rat(1, 2)));
        // a+ = a(-1) e^{a/2} + e^{a/2 - 2 a2}
        StateVector want = heis_apply(a, -1, StateVector::exp_charge(half)) +
                           StateVector::exp_charge(half - a2.scale(S(2)));
        CHECK(g.gen.at("aplus") == want);
        // H = S_3(a) + S_1(a1 - a2) e^{-2 a2}
        StateVector hw = schur_exp(a, 3) +
                         with_charge(schur_exp(a1 - a2, 1), -a2.scale(S(2)));
        CHECK(g.gen.at("H") == hw);
    }
    {
        GeneratorSet g = build_generators(3, Realization::deformed_rank2);
        auto l = g.gen.at("F").lattice();
        Weight a1 = Weight::basis(l, 0), a2 = Weight::basis(l, 1);
        Weight a = a1 + a2;
        Weight half = a.scale(Scalar(Rat(1, 2)));
        StateVector want = with_charge(schur_exp(a, 2), half) +
                           with_charge(schur_exp(a1 - a2, 1), half - a2.scale(S(2)));
        CHECK(g.gen.at("aplus") == want);
    }
}

TEST_CASE("generator primary weights") {
    for (int p = 2; p <= 3; ++p) {
        GeneratorSet g = build_generators(p, Realization::deformed_rank2);
        auto l = g.gen.at("H").lattice();
        // rebuild omega on the generator lattice
        Weight a = Weight::basis(l, 0) + Weight::basis(l, 1);
        Weight a2 = Weight::basis(l, 1);
        StateVector vac = StateVector::exp_charge(Weight::zero(l));
        StateVector ws =
            heis_apply(a, -1, heis_apply(a, -1, vac)).scale(Scalar(Rat(1, 4 * p))) +
            heis_apply(a, -2, vac).scale(Scalar(Rat(p - 1, 2 * p))) +
            StateVector::exp_charge(a2.scale(S(-2))).scale(Scalar(Rat(p - 1, p)));
        ConformalVector w = as_conformal(ws);
        PrimaryCheck ph = primary_check(g.gen.at("H"), w);
        CHECK(ph.is_primary);
        CHECK(ph.weight == S(2 * p - 1));
        for (auto* name : {"aminus", "aplus"}) {
            PrimaryCheck pa = primary_check(g.gen.at(name), w);
            CHECK(pa.is_primary);
            CHECK(pa.weight == Scalar(Rat(3 * p - 2, 4)));
        }
    }
}

TEST_CASE("symplectic fermion relations at p=2") {
    GeneratorSet g = build_generators(2, Realization::deformed_rank2);
    auto l = g.gen.at("aminus").lattice();
    StateVector vac = StateVector::exp_charge(Weight::zero(l));
    CHECK(general_mode(g.gen.at("aminus"), 1L, g.gen.at("aplus")) == vac.scale(S(2)));
    CHECK(general_mode(g.gen.at("aminus"), 0L, g.gen.at("aplus")).is_zero());
    // {a^-_2, a^+_{-2}} e^0 = 4 e^0
    StateVector acom =
        general_mode(g.gen.at("aminus"), 2L, general_mode(g.gen.at("aplus"), -2L, vac)) +
        general_mode(g.gen.at("aplus"), -2L, general_mode(g.gen.at("aminus"), 2L, vac));
    CHECK(acom == vac.scale(S(4)));

    Report rep = sf_relations_check(2, 2);
    INFO(rep.str());
    CHECK(rep.pass());
}

TEST_CASE("module builders") {
    ModuleHandle mt = build_module_Mt(Scalar(Rat(1, 2)), 2);
    Weight a = Weight::basis(mt.lattice, 0);
    CHECK(mt.generator == StateVector::exp_charge(a.scale(Scalar(Rat(1, 8)))));

    ModuleHandle p1 = build_module_pi(1, 2);
    Weight b = Weight::basis(p1.lattice, 0);
    CHECK(p1.generator == StateVector::exp_charge(b.scale(Scalar(Rat(-1, 2)))));

    ModuleHandle pm1 = build_module_pi(-1, 2);
    CHECK_FALSE(pm1.generator.is_zero());
    CHECK(pm1.generator.the_charge() ==
          Weight::basis(pm1.lattice, 0).scale(Scalar(Rat(1, 2))));

    Scalar r = Scalar::var("r");
    ModuleHandle frs = build_module_Frs(r, S(0));
    Weight a1 = Weight::basis(frs.lattice, 0);
    CHECK(frs.generator == StateVector::exp_charge(a1.scale(r / S(3))));
}

TEST_CASE("highest weight action table, symbolic r") {
    CHECK(h_r1(S(3)).is_zero());
    Scalar r = Scalar::var("r");
    Report rep = hw_action_table(r);
    INFO(rep.str());
    CHECK(rep.pass());
    Report num = hw_action_table(S(5));
    CHECK(num.pass());
}

TEST_CASE("P_r decomposition") {
    Scalar r = Scalar::var("r");
    PDecomposition dec = decompose_P_r(r);
    CHECK(dec.split);
    INFO(dec.report.str());
    CHECK(dec.report.pass());
    CHECK(dec.wplus == h_r1(r + S(2)));
    auto l = dec.vplus.lattice();
    CHECK(dec.vplus == v_rs(l, r, S(1)) + v_rs(l, r, S(-1)).scale(S(1) / (r - S(1))));

    PDecomposition jb = decompose_P_r(S(1));
    CHECK_FALSE(jb.split);
    INFO(jb.report.str());
    CHECK(jb.report.pass());
    CHECK(jb.jordan_L0[0][0].is_zero());
    CHECK(jb.jordan_L0[0][1].is_zero());
    CHECK(jb.jordan_L0[1][0] == Scalar(Rat(1, 2)));
    CHECK(jb.jordan_L0[1][1].is_zero());
}

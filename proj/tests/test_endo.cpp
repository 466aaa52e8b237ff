#include <set>

#include "doctest.h"
#include "morphcat/endo.hpp"
#include "test_util.hpp"

using namespace morphcat;
using namespace morphcat::testutil;

namespace {

MorphObject rank_one_example(const Ring& field) {
    return MorphObject::from_matrix(mat(field, {{1, 0}, {0, 0}}));
}

MorphObject scalar_object(const Ring& field, long c) {
    Matrix a(field, 1, 1);
    a.set(0, 0, c);
    return MorphObject::from_matrix(a);
}

// Parameters (u, v, w, x, y) of an endomorphism of the rank-one example:
// A0 = [[u,0],[v,w]], A1 = [[u,x],[0,y]].
struct FiveParams {
    mpq_class u, v, w, x, y;
};
FiveParams params_of(const MorphMap& e) {
    return FiveParams{e.u0().matrix().at(0, 0), e.u0().matrix().at(1, 0), e.u0().matrix().at(1, 1),
                      e.u1().matrix().at(0, 1), e.u1().matrix().at(1, 1)};
}

}  // namespace

TEST_CASE("endomorphism algebra dimensions") {
    for (long p : {2L, 3L, 5L}) {
        Ring f = Ring::prime_field(p);
        EndoAlgebra e(rank_one_example(f));
        CHECK(e.dim() == 5);
        // Every basis endomorphism has the (u,v,w,x,y) shape with matching
        // corners.
        for (const auto& b : e.basis()) {
            CHECK(b.u0().matrix().at(0, 1) == 0);
            CHECK(b.u1().matrix().at(1, 0) == 0);
            CHECK(b.u0().matrix().at(0, 0) == b.u1().matrix().at(0, 0));
        }
        CHECK(e.e0_dim() == 3);
        CHECK(e.e1_dim() == 3);
    }

    Ring f2 = Ring::prime_field(2);
    CHECK(EndoAlgebra(scalar_object(f2, 1)).dim() == 1);
    CHECK(EndoAlgebra(scalar_object(f2, 0)).dim() == 2);
    CHECK_THROWS_AS(EndoAlgebra(MorphObject::zero_object(Ring::residue(4))), Error);
}

TEST_CASE("radical of the endomorphism algebra") {
    Ring f2 = Ring::prime_field(2);
    auto ex = rank_one_example(f2);
    EndoAlgebra e(ex);
    auto rad = radical(e);
    CHECK(rad.size() == 2);
    // The radical is the (v, x) parameter plane.
    for (const auto& r : rad) {
        FiveParams pr = params_of(r);
        CHECK(pr.u == 0);
        CHECK(pr.w == 0);
        CHECK(pr.y == 0);
    }

    EndoAlgebra ezero(scalar_object(f2, 0));  // E = k x k, semisimple
    CHECK(radical(ezero).empty());

    // mu = [1 0]: k^2 -> k gives a triangular endomorphism algebra with
    // parameters (a, c, d): A0 = [[a,0],[c,d]], A1 = [a].
    EndoAlgebra etri(MorphObject::from_matrix(mat(f2, {{1, 0}})));
    CHECK(etri.dim() == 3);
    CHECK(radical(etri).size() == 1);
}

TEST_CASE("classification of endomorphism algebras") {
    for (long p : {2L, 3L, 5L}) {
        Ring f = Ring::prime_field(p);
        auto cls = classify(EndoAlgebra(rank_one_example(f)));
        CHECK(cls.dim == 5);
        CHECK(cls.radical_dim == 2);
        CHECK(cls.semisimple_dim == 3);
        CHECK(cls.num_blocks == 3);
        for (bool dv : cls.block_division_flags) CHECK(dv);
        CHECK(cls.type_n == 3);
        CHECK(!cls.is_local);
        CHECK(cls.is_finite_type);
        CHECK(cls.is_semilocal);
        CHECK(cls.e0_dim == 3);
        CHECK(cls.e1_dim == 3);
    }

    Ring f2 = Ring::prime_field(2);
    auto cid = classify(EndoAlgebra(scalar_object(f2, 1)));
    CHECK(cid.type_n == 1);
    CHECK(cid.is_local);

    auto czero = classify(EndoAlgebra(scalar_object(f2, 0)));
    CHECK(czero.type_n == 2);
    CHECK(!czero.is_local);

    Ring q = Ring::rational();
    auto cq = classify(EndoAlgebra(scalar_object(q, 1)));
    CHECK(cq.is_local);
    CHECK(cq.type_n == 1);
}

TEST_CASE("maximal ideals match the parameter-plane description") {
    // Over F_2 the three maximal ideals of the rank-one example are the
    // subsets u = 0, w = 0, y = 0 of the five-parameter algebra; check the
    // membership predicates element-by-element (32 elements).
    Ring f2 = Ring::prime_field(2);
    auto ex = rank_one_example(f2);
    EndoAlgebra e(ex);
    auto ideals = endo_maximal_ideals(e);
    REQUIRE(ideals.size() == 3);

    auto elems = all_endos(ex, 1u << 10);
    REQUIRE(elems.size() == 32);

    // Identify each ideal with one of the parameter planes.
    std::set<int> matched;
    for (const auto& ideal : ideals) {
        std::vector<Matrix> basis;
        for (const auto& b : ideal) {
            Matrix v(f2, 8, 1);
            FiveParams pr = params_of(b);
            v.set(0, 0, pr.u);
            v.set(1, 0, pr.v);
            v.set(2, 0, pr.w);
            v.set(3, 0, pr.x);
            v.set(4, 0, pr.y);
            basis.push_back(std::move(v));
        }
        for (int plane = 0; plane < 3; ++plane) {
            bool match = true;
            for (const auto& u : elems) {
                FiveParams pr = params_of(u);
                mpq_class tested = plane == 0 ? pr.u : (plane == 1 ? pr.w : pr.y);
                Matrix v(f2, 8, 1);
                v.set(0, 0, pr.u);
                v.set(1, 0, pr.v);
                v.set(2, 0, pr.w);
                v.set(3, 0, pr.x);
                v.set(4, 0, pr.y);
                bool in_ideal = in_span(f2, basis, v);
                if (in_ideal != (tested == 0)) match = false;
            }
            if (match) matched.insert(plane);
        }
    }
    CHECK(matched == std::set<int>{0, 1, 2});
}

TEST_CASE("units of E_M are the maps with invertible components") {
    Ring f2 = Ring::prime_field(2);
    auto ex = rank_one_example(f2);
    EndoAlgebra e(ex);
    for (const auto& u : all_endos(ex, 1u << 10)) {
        bool alg_unit = e.algebra().is_unit_element(e.coords_of(u));
        CHECK(alg_unit == is_morph_iso(u));
    }
}

TEST_CASE("radical membership") {
    Ring f2 = Ring::prime_field(2);
    auto ex = rank_one_example(f2);
    EndoAlgebra e(ex);

    // The pair with only v nonzero is nilpotent and radical.
    Matrix a0 = mat(f2, {{0, 0}, {1, 0}});
    Matrix a1(f2, 2, 2);
    MorphMap v_only(ex, ex, ModuleHom(ex.m0(), ex.m0(), a0), ModuleHom(ex.m1(), ex.m1(), a1));
    CHECK(radical_membership(e, v_only));

    CHECK(!radical_membership(e, MorphMap::identity(ex)));

    // Both components nilpotent on this object: the (v, x) pairs.
    Matrix b1 = mat(f2, {{0, 1}, {0, 0}});
    MorphMap vx(ex, ex, ModuleHom(ex.m0(), ex.m0(), a0), ModuleHom(ex.m1(), ex.m1(), b1));
    CHECK(radical_membership(e, vx));
}

TEST_CASE("proper inclusion of the component-radical intersection") {
    // J(End(M_i)) = 0 for matrix algebras, so E_M meets J x J only in zero,
    // while J(E_M) is 2-dimensional: the inclusion is strict.
    Ring f2 = Ring::prime_field(2);
    auto ex = rank_one_example(f2);
    CHECK(classify_module_end(ex.m0()).radical_dim == 0);
    CHECK(classify_module_end(ex.m1()).radical_dim == 0);
    int both_zero = 0;
    for (const auto& u : all_endos(ex, 1u << 10))
        if (u.u0().is_zero_map() && u.u1().is_zero_map()) ++both_zero;
    CHECK(both_zero == 1);
    CHECK(classify(EndoAlgebra(ex)).radical_dim == 2);
}

TEST_CASE("ideal predicates on uniserial objects") {
    Ring z4 = Ring::residue(4);
    FPModule m0 = FPModule::cyclic(z4, 0);  // Z/4
    FPModule m1 = FPModule::cyclic(z4, 2);  // Z/2
    MorphObject red(m0, m1, mat(z4, {{1}}));

    auto res = ideal_predicates(red);
    REQUIRE(res.reports.size() == 6);

    // Oracle: E_M = {(a, b) : b = a mod 2} = {(0,0),(1,1),(2,0),(3,1)}.
    auto elems = all_endos(red, 1u << 10);
    CHECK(elems.size() == 4);
    // K_1 = non-surjective u1 = {(0,0),(2,0)}; contains (2, 0).
    int k1_members = 0;
    bool has_two_zero = false;
    for (const auto& u : elems) {
        if (predicate_member(IdealTag::K1, u)) {
            ++k1_members;
            if (u.u0().canonical().at(0, 0) == 2 && u.u1().is_zero_map()) has_two_zero = true;
        }
    }
    CHECK(k1_members == 2);
    CHECK(has_two_zero);

    for (const auto& rep : res.reports) {
        if (rep.tag == IdealTag::K1) {
            CHECK(rep.members == 2);
            CHECK(rep.proper_ideal);
            CHECK(rep.maximal);
            CHECK(rep.completely_prime);
        }
        if (rep.tag == IdealTag::IMd) {
            // Non-automorphisms of Z/4 among the components: a in {0, 2}.
            CHECK(rep.members == 2);
            CHECK(rep.proper_ideal);
        }
    }
}

TEST_CASE("ideal predicates on the identity object") {
    Ring f2 = Ring::prime_field(2);
    auto idk = scalar_object(f2, 1);
    auto res = ideal_predicates(idk);
    for (const auto& rep : res.reports) {
        if (rep.tag == IdealTag::IMd || rep.tag == IdealTag::IMc) {
            CHECK(rep.members == 1);  // only the zero endomorphism
            CHECK(rep.proper_ideal);
            CHECK(rep.maximal);
        }
    }
}

TEST_CASE("ideal predicates preconditions") {
    Ring f2 = Ring::prime_field(2);
    // k^2 components: End not local, not uniserial -> no applicable tags.
    auto ex = rank_one_example(f2);
    CHECK_THROWS_AS(ideal_predicates(ex), Error);
    try {
        ideal_predicates(ex);
    } catch (const Error& err) {
        CHECK(std::string(err.what()).find("not local") != std::string::npos);
        CHECK(std::string(err.what()).find("uniserial") != std::string::npos);
    }
}

TEST_CASE("locality criteria") {
    Ring f2 = Ring::prime_field(2);

    auto rep_id = locality_criteria_check(scalar_object(f2, 1));
    CHECK(rep_id.thm53_case == 3);
    CHECK(rep_id.lhs_local);
    CHECK(rep_id.rhs_holds);
    CHECK(rep_id.agree);
    CHECK(rep_id.lemma61_applicable);
    CHECK(rep_id.lemma61_agree);
    CHECK(rep_id.closing_agree);

    auto rep_zero = locality_criteria_check(scalar_object(f2, 0));
    CHECK(!rep_zero.lhs_local);
    CHECK(!rep_zero.rhs_holds);
    CHECK(rep_zero.agree);

    // M1 = 0: case (2), local iff End(M0) is local.
    auto rep_k0 = locality_criteria_check(MorphObject::from_matrix(Matrix(f2, 0, 1)));
    CHECK(rep_k0.thm53_case == 2);
    CHECK(rep_k0.lhs_local);
    CHECK(rep_k0.rhs_holds);
    CHECK(rep_k0.agree);

    // Z/4 -> Z/2 reduction over the residue ring.
    Ring z4 = Ring::residue(4);
    MorphObject red(FPModule::cyclic(z4, 0), FPModule::cyclic(z4, 2), mat(z4, {{1}}));
    auto rep_red = locality_criteria_check(red);
    CHECK(rep_red.agree);
    CHECK(rep_red.lemma61_agree);
    CHECK(rep_red.closing_agree);
}

TEST_CASE("locality criteria agree across the F_2 corpus") {
    std::mt19937_64 rng(909);
    Ring f2 = Ring::prime_field(2);
    int done = 0;
    while (done < 25) {
        MorphObject m = random_morph_object(rng, f2, 2);
        auto rep = locality_criteria_check(m);
        CHECK(rep.agree);
        CHECK(rep.lemma61_agree);
        CHECK(rep.closing_agree);
        // Cross-check the enumerated verdict against the algebra tier.
        if (m.m0().ngens() + m.m1().ngens() > 0) {
            bool has_nonzero = !m.m0().invariants().is_zero() || !m.m1().invariants().is_zero();
            if (has_nonzero) CHECK(rep.lhs_local == classify(EndoAlgebra(m)).is_local);
        }
        ++done;
    }
}

TEST_CASE("type bound and semilocal transfer on the F_2 corpus") {
    std::mt19937_64 rng(910);
    Ring f2 = Ring::prime_field(2);
    int done = 0;
    while (done < 25) {
        MorphObject m = random_morph_object(rng, f2, 2);
        if (m.m0().invariants().is_zero() || m.m1().invariants().is_zero()) continue;
        EndoAlgebra e(m);
        auto cls = classify(e);
        auto c0 = classify_module_end(m.m0());
        auto c1 = classify_module_end(m.m1());
        if (cls.type_n && c0.type_n && c1.type_n)
            CHECK(*cls.type_n <= *c0.type_n + *c1.type_n);
        // Semilocal transfer: all three block decompositions exist.
        CHECK(cls.is_semilocal);
        if (e.e0_dim() > 0) CHECK(classify_algebra(e.e0_algebra()).is_semilocal);
        if (e.e1_dim() > 0) CHECK(classify_algebra(e.e1_algebra()).is_semilocal);
        ++done;
    }
}

TEST_CASE("component radical containment (Prop 4.3 direction)") {
    // Over a field End(M_i) is semisimple, so the hypothesis forces both
    // components to vanish; the zero map is always radical.
    Ring f2 = Ring::prime_field(2);
    std::mt19937_64 rng(911);
    int done = 0;
    while (done < 10) {
        MorphObject m = random_morph_object(rng, f2, 2);
        if (m.m0().invariants().is_zero() && m.m1().invariants().is_zero()) continue;
        EndoAlgebra e(m);
        if (e.dim() == 0) continue;
        for (const auto& u : all_endos(m, 1u << 12)) {
            bool comp0_rad = u.u0().is_zero_map();
            bool comp1_rad = u.u1().is_zero_map();
            if (comp0_rad && comp1_rad) CHECK(radical_membership(e, u));
        }
        ++done;
    }
}

TEST_CASE("module_end_finite_type") {
    Ring z4 = Ring::residue(4);
    CHECK(module_end_finite_type(FPModule::cyclic(z4, 0)));
    Ring f2 = Ring::prime_field(2);
    CHECK(module_end_finite_type(FPModule::free_module(f2, 1)));
    CHECK(!module_end_finite_type(FPModule::free_module(f2, 2)));
}

#include "doctest.h"
#include "morphcat/morph.hpp"
#include "test_util.hpp"

using namespace morphcat;
using namespace morphcat::testutil;

namespace {

MorphObject scalar_object(const Ring& field, long c) {
    Matrix a(field, 1, 1);
    a.set(0, 0, c);
    return MorphObject::from_matrix(a);
}

}  // namespace

TEST_CASE("hom_space examples over F_2") {
    Ring f2 = Ring::prime_field(2);
    MorphObject id_obj = scalar_object(f2, 1);
    MorphObject zero_obj = scalar_object(f2, 0);

    // Oracle: enumerate all 4 scalar pairs (u0, u1); the constraint
    // u1*1 = 0*u0 keeps exactly (0,0) and (1,0).
    int commuting = 0;
    for (long u0 = 0; u0 < 2; ++u0)
        for (long u1 = 0; u1 < 2; ++u1)
            if ((u1 * 1) % 2 == (0 * u0) % 2) ++commuting;
    CHECK(commuting == 2);

    auto hs = hom_space(id_obj, zero_obj);
    CHECK(hs.size == 2);
    REQUIRE(hs.cyclic_generators.size() == 1);
    CHECK(hs.cyclic_generators[0].u0().canonical().at(0, 0) == 1);
    CHECK(hs.cyclic_generators[0].u1().is_zero_map());

    // End(id): pairs (c, c).
    auto end_id = hom_space(id_obj, id_obj);
    CHECK(end_id.size == 2);
    REQUIRE(end_id.cyclic_generators.size() == 1);
    CHECK(end_id.cyclic_generators[0].u0() == end_id.cyclic_generators[0].u1());

    // Hom into the zero object: only the zero map.
    auto to_zero = hom_space(id_obj, MorphObject::zero_object(f2));
    CHECK(to_zero.size == 1);
    CHECK(to_zero.cyclic_generators.empty());
}

TEST_CASE("morph direct sums are componentwise") {
    Ring f2 = Ring::prime_field(2);
    MorphObject k_to_0 = MorphObject::from_matrix(Matrix(f2, 0, 1));
    MorphObject zero_to_k = MorphObject::from_matrix(Matrix(f2, 1, 0));

    auto s = morph_direct_sum({k_to_0, zero_to_k});
    CHECK(s.object.m0().invariants().dimension() == 1);
    CHECK(s.object.m1().invariants().dimension() == 1);
    CHECK(s.object.mu().matrix().is_zero());

    MorphObject m = scalar_object(f2, 1);
    auto s2 = morph_direct_sum({m, MorphObject::zero_object(f2)});
    CHECK(iso_test(s2.object, m).verdict == IsoVerdict::Isomorphic);

    auto s3 = morph_direct_sum({m, m});
    CHECK(s3.object.mu().matrix() == Matrix::identity(f2, 2));

    // Biproduct identities in Morph.
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            auto comp = s3.projections[i].compose(s3.injections[j]);
            if (i == j) CHECK(comp == MorphMap::identity(m));
            else CHECK(comp.is_zero_map());
        }
}

TEST_CASE("the four canonical functors") {
    Ring f5 = Ring::prime_field(5);
    MorphObject ex = MorphObject::from_matrix(mat(f5, {{1, 0}, {0, 0}}));
    CHECK(functor_D(ex).invariants().dimension() == 2);
    CHECK(functor_C(ex).invariants().dimension() == 2);
    CHECK(functor_Ker(ex).module.invariants().dimension() == 1);
    CHECK(functor_Coker(ex).module.invariants().dimension() == 1);

    MorphObject z = MorphObject::zero_object(f5);
    CHECK(functor_D(z).invariants().is_zero());
    CHECK(functor_C(z).invariants().is_zero());
    CHECK(functor_Ker(z).module.invariants().is_zero());
    CHECK(functor_Coker(z).module.invariants().is_zero());

    MorphObject idk = scalar_object(f5, 1);
    CHECK(functor_Ker(idk).module.invariants().is_zero());
    CHECK(functor_Coker(idk).module.invariants().is_zero());
}

TEST_CASE("functoriality on random composable pairs") {
    std::mt19937_64 rng(101);
    int done = 0;
    while (done < 40) {
        Ring ring = (done % 3 == 0)   ? Ring::prime_field(2)
                    : (done % 3 == 1) ? Ring::residue(4)
                                      : Ring::prime_field(3);
        MorphObject a = random_morph_object(rng, ring, 2);
        MorphObject b = random_morph_object(rng, ring, 2);
        MorphObject c = random_morph_object(rng, ring, 2);
        auto hab = hom_space(a, b);
        auto hbc = hom_space(b, c);
        if (hab.cyclic_generators.empty() || hbc.cyclic_generators.empty()) continue;
        MorphMap f = random_morph_map(rng, hab);
        MorphMap g = random_morph_map(rng, hbc);
        MorphMap gf = g.compose(f);

        CHECK(functor_D_map(gf) == functor_D_map(g).compose(functor_D_map(f)));
        CHECK(functor_C_map(gf) == functor_C_map(g).compose(functor_C_map(f)));
        CHECK(functor_Ker_map(gf) == functor_Ker_map(g).compose(functor_Ker_map(f)));
        CHECK(functor_Coker_map(gf) == functor_Coker_map(g).compose(functor_Coker_map(f)));
        ++done;
    }
}

TEST_CASE("commuting-square closure under composition") {
    std::mt19937_64 rng(202);
    int done = 0;
    while (done < 500) {
        Ring ring = (done % 2 == 0) ? Ring::prime_field(2) : Ring::residue(4);
        MorphObject a = random_morph_object(rng, ring, 2);
        MorphObject b = random_morph_object(rng, ring, 2);
        MorphObject c = random_morph_object(rng, ring, 2);
        auto hab = hom_space(a, b);
        auto hbc = hom_space(b, c);
        if (hab.cyclic_generators.empty() || hbc.cyclic_generators.empty()) continue;
        MorphMap f = random_morph_map(rng, hab);
        MorphMap g = random_morph_map(rng, hbc);
        MorphMap gf = g.compose(f);
        // The composite square still commutes.
        CHECK(gf.u1().compose(a.mu()) == c.mu().compose(gf.u0()));
        ++done;
    }
}

TEST_CASE("canonical exact sequence") {
    Ring f5 = Ring::prime_field(5);
    auto rep = verify_canonical_sequence(MorphObject::from_matrix(mat(f5, {{1, 0}, {0, 0}})));
    CHECK(rep.ok());
    CHECK(rep.dims == std::vector<std::size_t>{1, 2, 4, 3});

    Ring f2 = Ring::prime_field(2);
    auto rep2 = verify_canonical_sequence(scalar_object(f2, 0));
    CHECK(rep2.ok());
    CHECK(rep2.dims == std::vector<std::size_t>{1, 1, 2, 2});

    auto rep3 = verify_canonical_sequence(scalar_object(f2, 1));
    CHECK(rep3.ok());
    CHECK(rep3.dims == std::vector<std::size_t>{0, 1, 2, 1});
}

TEST_CASE("canonical sequence is exact on random objects") {
    std::mt19937_64 rng(303);
    int done = 0;
    while (done < 60) {
        Ring ring = (done % 4 == 0)   ? Ring::prime_field(2)
                    : (done % 4 == 1) ? Ring::residue(4)
                    : (done % 4 == 2) ? Ring::prime_field(3)
                                      : Ring::integer();
        MorphObject m = random_morph_object(rng, ring, 2);
        auto rep = verify_canonical_sequence(m);
        CHECK(rep.ok());
        if (!rep.ok()) MESSAGE(rep.failure);
        ++done;
    }
}

TEST_CASE("iso_test examples") {
    Ring f2 = Ring::prime_field(2);
    MorphObject id_obj = scalar_object(f2, 1);
    MorphObject zero_obj = scalar_object(f2, 0);

    auto r1 = iso_test(id_obj, zero_obj);
    CHECK(r1.verdict == IsoVerdict::NotIsomorphic);
    CHECK(r1.certificate.find("Ker") != std::string::npos);

    auto r2 = iso_test(id_obj, id_obj);
    CHECK(r2.verdict == IsoVerdict::Isomorphic);
    REQUIRE(r2.witness.has_value());
    CHECK(is_morph_iso(*r2.witness));

    Ring f3 = Ring::prime_field(3);
    auto a = MorphObject::from_matrix(mat(f3, {{1, 0}, {0, 0}}));
    auto b = MorphObject::from_matrix(mat(f3, {{0, 0}, {0, 1}}));
    auto r3 = iso_test(a, b);
    CHECK(r3.verdict == IsoVerdict::Isomorphic);
    REQUIRE(r3.witness.has_value());
    CHECK(is_morph_iso(*r3.witness));
    // The witness really is a map a -> b.
    CHECK(r3.witness->u1().compose(a.mu()) == b.mu().compose(r3.witness->u0()));
}

TEST_CASE("iso_test over finite non-field rings") {
    Ring z4 = Ring::residue(4);
    FPModule za = FPModule::cyclic(z4, 2);  // Z/2 over Z/4
    FPModule zb = FPModule::cyclic(z4, 0);  // Z/4 itself

    // Reduction Z/4 -> Z/2 vs the zero map Z/4 -> Z/2: not isomorphic
    // (kernel invariants differ).
    MorphObject red(zb, za, mat(z4, {{1}}));
    MorphObject zer(zb, za, mat(z4, {{0}}));
    CHECK(iso_test(red, zer).verdict == IsoVerdict::NotIsomorphic);

    // Multiplication by a unit gives an isomorphic object.
    MorphObject red3(zb, za, mat(z4, {{3}}));
    auto r = iso_test(red, red3);
    CHECK(r.verdict == IsoVerdict::Isomorphic);
    REQUIRE(r.witness.has_value());
    CHECK(is_morph_iso(*r.witness));
}

TEST_CASE("unit criterion: two-sided inverses need both components invertible") {
    // Exhaustive over End(M) for small F_2 objects: u has a two-sided inverse
    // in the morphism category iff u0 and u1 are both isomorphisms.
    Ring f2 = Ring::prime_field(2);
    std::vector<MorphObject> corpus = {
        scalar_object(f2, 0), scalar_object(f2, 1),
        MorphObject::from_matrix(mat(f2, {{1, 0}, {0, 0}})),
        MorphObject::from_matrix(Matrix(f2, 0, 1)),  // k -> 0
        MorphObject::from_matrix(Matrix(f2, 1, 0)),  // 0 -> k
    };
    for (const auto& m : corpus) {
        auto end = hom_space(m, m);
        auto elems = all_morph_maps(end, 1u << 16);
        for (const auto& u : elems) {
            bool has_inverse = false;
            for (const auto& v : elems) {
                if (u.compose(v) == MorphMap::identity(m) && v.compose(u) == MorphMap::identity(m)) {
                    has_inverse = true;
                    break;
                }
            }
            CHECK(has_inverse == (is_isomorphism(u.u0()) && is_isomorphism(u.u1())));
        }
    }
}

TEST_CASE("rank form produces mutually inverse maps") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 30; ++trial) {
        Ring ring = trial % 2 ? Ring::prime_field(3) : Ring::rational();
        MorphObject m = random_morph_object(rng, ring, 3);
        RankForm rf = rank_form(m);
        CHECK(rf.to_canonical.compose(rf.from_canonical) == MorphMap::identity(rf.canonical));
        CHECK(rf.from_canonical.compose(rf.to_canonical) == MorphMap::identity(m));
        CHECK(rf.r == m.m0().invariants().dimension() - functor_Ker(m).module.invariants().dimension());
    }
}

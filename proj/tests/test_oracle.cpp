#include <set>

#include "doctest.h"
#include "morphcat/oracle.hpp"
#include "test_util.hpp"

using namespace morphcat;
using namespace morphcat::testutil;

TEST_CASE("brute_force_iso examples") {
    Ring f2 = Ring::prime_field(2);
    MorphObject idk = MorphObject::from_matrix(Matrix::identity(f2, 1));
    MorphObject zerok = MorphObject::from_matrix(Matrix(f2, 1, 1));

    CHECK(!brute_force_iso(idk, zerok));
    CHECK(brute_force_iso(idk, idk));
    CHECK(brute_force_iso(MorphObject::from_matrix(mat(f2, {{1, 0}, {0, 0}})),
                          MorphObject::from_matrix(mat(f2, {{0, 0}, {0, 1}}))));

    // Over the cap: Hom(k^5, k^5) x Hom(k^5, k^5) has 2^50 pairs.
    MorphObject big = MorphObject::from_matrix(Matrix::identity(f2, 5));
    CHECK_THROWS_AS(brute_force_iso(big, big), Error);
}

TEST_CASE("brute force agrees with iso_test on corpora") {
    for (int which = 0; which < 2; ++which) {
        Ring ring = which == 0 ? Ring::prime_field(2) : Ring::residue(4);
        Corpus corpus = generate_corpus(CorpusSpec{ring, 2, 2, 14, 5});
        for (std::size_t i = 0; i < corpus.objects.size(); ++i)
            for (std::size_t j = i; j < corpus.objects.size(); ++j) {
                const auto& m = corpus.objects[i];
                const auto& n = corpus.objects[j];
                bool oracle;
                try {
                    oracle = brute_force_iso(m, n);
                } catch (const Error&) {
                    continue;  // beyond the oracle ceiling
                }
                auto fast = iso_test(m, n);
                REQUIRE(fast.verdict != IsoVerdict::Undecided);
                CHECK((fast.verdict == IsoVerdict::Isomorphic) == oracle);
            }
    }
}

TEST_CASE("orbit partition examples") {
    Ring f2 = Ring::prime_field(2);
    FPModule k = FPModule::free_module(f2, 1);
    auto p1 = orbit_partition(k, k);
    CHECK(p1.homs.size() == 2);
    CHECK(p1.num_orbits == 2);  // 0 and 1, Aut groups trivial

    FPModule k2 = FPModule::free_module(f2, 2);
    auto p2 = orbit_partition(k2, k2);
    CHECK(p2.homs.size() == 16);
    CHECK(p2.num_orbits == 3);  // ranks 0, 1, 2

    FPModule z = FPModule::zero(f2);
    auto p3 = orbit_partition(z, k);
    CHECK(p3.num_orbits == 1);

    // Fiber sizes add up.
    std::size_t total = 0;
    for (auto s : p2.orbit_sizes) total += s;
    CHECK(total == p2.homs.size());
}

TEST_CASE("orbits are the brute-force isomorphism classes") {
    Ring f2 = Ring::prime_field(2);
    FPModule k2 = FPModule::free_module(f2, 2);
    FPModule k1 = FPModule::free_module(f2, 1);
    auto part = orbit_partition(k2, k1);
    for (std::size_t i = 0; i < part.homs.size(); ++i)
        for (std::size_t j = 0; j < part.homs.size(); ++j) {
            MorphObject mi(k2, k1, part.homs[i]);
            MorphObject mj(k2, k1, part.homs[j]);
            CHECK((part.orbit_of[i] == part.orbit_of[j]) == brute_force_iso(mi, mj));
        }
}

TEST_CASE("orbit count over F_2 equals min(n, m) + 1") {
    Ring f2 = Ring::prime_field(2);
    for (std::size_t n = 1; n <= 2; ++n)
        for (std::size_t m = 1; m <= 2; ++m) {
            auto part = orbit_partition(FPModule::free_module(f2, n), FPModule::free_module(f2, m));
            CHECK(part.num_orbits == std::min(n, m) + 1);
        }
}

TEST_CASE("corpus generation is deterministic and seeded") {
    Ring z4 = Ring::residue(4);
    CorpusSpec spec{z4, 2, 2, 10, 42};
    Corpus c1 = generate_corpus(spec);
    Corpus c2 = generate_corpus(spec);
    REQUIRE(c1.objects.size() == c2.objects.size());
    for (std::size_t i = 0; i < c1.objects.size(); ++i) {
        CHECK(c1.objects[i].mu().canonical() == c2.objects[i].mu().canonical());
        CHECK(c1.objects[i].m0().relations() == c2.objects[i].m0().relations());
    }

    // Forced seeds: the zero object and the Z/4 -> Z/2 reduction.
    CHECK(c1.objects[0].m0().invariants().is_zero());
    bool found_reduction = false;
    for (const auto& obj : c1.objects) {
        if (obj.m0().invariants().divisors == std::vector<mpq_class>{4} &&
            obj.m1().invariants().divisors == std::vector<mpq_class>{2} &&
            !obj.mu().is_zero_map())
            found_reduction = true;
    }
    CHECK(found_reduction);

    // Field corpora force the rank-one example.
    Corpus cf = generate_corpus(CorpusSpec{Ring::prime_field(2), 2, 2, 4, 0});
    bool found_example = false;
    for (const auto& obj : cf.objects) {
        if (obj.m0().ngens() == 2 && obj.m1().ngens() == 2 && !obj.mu().is_zero_map() &&
            obj.mu().matrix().at(0, 0) == 1 && obj.mu().matrix().at(1, 1) == 0)
            found_example = true;
    }
    CHECK(found_example);

    // Different seeds give different random tails.
    Corpus c3 = generate_corpus(CorpusSpec{z4, 2, 2, 10, 43});
    bool differs = false;
    for (std::size_t i = 0; i < c1.objects.size(); ++i)
        if (!(c1.objects[i].mu().canonical() == c3.objects[i].mu().canonical()) ||
            c1.objects[i].m0().ngens() != c3.objects[i].m0().ngens())
            differs = true;
    CHECK(differs);
}

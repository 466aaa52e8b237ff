#pragma once

#include "morphcat/morph.hpp"

namespace morphcat {

// Ground truth by exhaustion: scans every pair in Hom(M0,N0) x Hom(M1,N1)
// with invertible components for a commuting square. Throws TooLarge when the
// full pair count exceeds the cap.
bool brute_force_iso(const MorphObject& m, const MorphObject& n,
                     std::uint64_t pair_cap = (1u << 24));

// Hom(C0, C1) partitioned under the automorphism action (u1, u0).g = u1 g u0^{-1}.
struct OrbitPartition {
    std::vector<ModuleHom> homs;
    std::vector<std::size_t> orbit_of;  // orbit index per hom
    std::size_t num_orbits = 0;
    std::vector<std::size_t> orbit_sizes;
};
OrbitPartition orbit_partition(const FPModule& c0, const FPModule& c1,
                               std::uint64_t hom_cap = (1u << 16));

struct CorpusSpec {
    Ring ring;
    std::size_t max_gens = 2;
    unsigned max_exponent = 3;
    std::size_t count = 24;
    std::uint64_t seed = 0;
};

struct Corpus {
    CorpusSpec spec;
    std::vector<MorphObject> objects;
};

// Deterministic corpus: forced seed objects (zero object, the rank-one
// example over fields, reduction and zero maps between cyclic p-power
// modules) plus seeded random objects.
Corpus generate_corpus(const CorpusSpec& spec);

}  // namespace morphcat

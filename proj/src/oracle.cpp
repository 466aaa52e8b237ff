#include "morphcat/oracle.hpp"

#include <map>
#include <random>

namespace morphcat {

bool brute_force_iso(const MorphObject& m, const MorphObject& n, std::uint64_t pair_cap) {
    if (m.ring() != n.ring()) fail("RingMismatch", "brute_force_iso over different rings");
    HomGroup h0 = hom_group(m.m0(), n.m0());
    HomGroup h1 = hom_group(m.m1(), n.m1());
    if (h0.size == 0 || h1.size == 0 || h0.size * h1.size > pair_cap)
        fail("TooLarge", "candidate pair count exceeds the oracle ceiling");

    std::vector<ModuleHom> iso0, iso1;
    for (const auto& f : all_homs(h0, pair_cap))
        if (is_isomorphism(f)) iso0.push_back(f);
    for (const auto& f : all_homs(h1, pair_cap))
        if (is_isomorphism(f)) iso1.push_back(f);

    for (const auto& u0 : iso0)
        for (const auto& u1 : iso1)
            if (u1.compose(m.mu()) == n.mu().compose(u0)) return true;
    return false;
}

OrbitPartition orbit_partition(const FPModule& c0, const FPModule& c1, std::uint64_t hom_cap) {
    HomGroup hg = hom_group(c0, c1);
    if (hg.size == 0 || hg.size > hom_cap)
        fail("TooLarge", "hom set exceeds the orbit enumeration ceiling");

    OrbitPartition out;
    out.homs = all_homs(hg, hom_cap);
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < out.homs.size(); ++i)
        index[out.homs[i].canonical().describe()] = i;

    // Automorphism lists, with inverses for the right action.
    std::vector<ModuleHom> aut0, aut0_inv, aut1;
    for (const auto& f : all_homs(hom_group(c0, c0), hom_cap))
        if (is_isomorphism(f)) {
            aut0.push_back(f);
            aut0_inv.push_back(*inverse_hom(f));
        }
    for (const auto& f : all_homs(hom_group(c1, c1), hom_cap))
        if (is_isomorphism(f)) aut1.push_back(f);

    out.orbit_of.assign(out.homs.size(), SIZE_MAX);
    for (std::size_t start = 0; start < out.homs.size(); ++start) {
        if (out.orbit_of[start] != SIZE_MAX) continue;
        std::size_t orbit = out.num_orbits++;
        std::vector<std::size_t> stack{start};
        out.orbit_of[start] = orbit;
        std::size_t size = 0;
        while (!stack.empty()) {
            std::size_t g = stack.back();
            stack.pop_back();
            ++size;
            auto visit = [&](const ModuleHom& img) {
                std::size_t idx = index.at(img.canonical().describe());
                if (out.orbit_of[idx] == SIZE_MAX) {
                    out.orbit_of[idx] = orbit;
                    stack.push_back(idx);
                }
            };
            for (const auto& a : aut1) visit(a.compose(out.homs[g]));
            for (const auto& ai : aut0_inv) visit(out.homs[g].compose(ai));
        }
        out.orbit_sizes.push_back(size);
    }
    return out;
}

namespace {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return n == 0 ? 0 : rng() % n; }

FPModule corpus_module(std::mt19937_64& rng, const Ring& ring, std::size_t max_gens,
                       unsigned max_exponent) {
    std::size_t g = draw(rng, max_gens + 1);
    std::size_t r = draw(rng, max_gens + 2);
    Matrix rel(ring, g, r);
    long span = 1;
    for (unsigned i = 0; i < max_exponent; ++i) span *= 2;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            if (ring.is_finite())
                rel.set(i, j, mpq_class(mpz_class(draw(rng, ring.modulus().get_ui()))));
            else
                rel.set(i, j, mpq_class(static_cast<long>(draw(rng, 2 * span + 1)) - span));
        }
    return FPModule(ring, g, rel);
}

ModuleHom corpus_hom(std::mt19937_64& rng, const HomGroup& hg) {
    const Ring& ring = hg.source.ring();
    Matrix h(ring, hg.target.ngens(), hg.source.ngens());
    std::vector<mpz_class> ranges = coefficient_ranges(ring, hg.orders);
    for (std::size_t i = 0; i < hg.cyclic_generators.size(); ++i) {
        mpq_class c;
        if (ranges[i] != 0)
            c = mpq_class(mpz_class(draw(rng, ranges[i].get_ui())));
        else
            c = mpq_class(static_cast<long>(draw(rng, 7)) - 3);
        if (c == 0) continue;
        h = h + hg.cyclic_generators[i].matrix().scaled(c);
    }
    return ModuleHom(hg.source, hg.target, std::move(h), false);
}

}  // namespace

Corpus generate_corpus(const CorpusSpec& spec) {
    if (!spec.ring.is_finite() && spec.ring.kind() != RingKind::Integer)
        fail("UnsupportedRing", "corpus generation needs a finite ring or Z");
    Corpus out{spec, {}};
    const Ring& ring = spec.ring;

    out.objects.push_back(MorphObject::zero_object(ring));
    FPModule free1 = FPModule::free_module(ring, 1);
    out.objects.emplace_back(free1, free1, Matrix::identity(ring, 1));

    if (ring.is_field()) {
        out.objects.push_back(MorphObject::from_matrix(
            Matrix::from_rows(ring, {{mpq_class(1), mpq_class(0)}, {mpq_class(0), mpq_class(0)}})));
    } else {
        // Reduction and zero maps between cyclic p-power modules.
        mpz_class p = ring.kind() == RingKind::Integer ? mpz_class(2) : ring.prime();
        unsigned emax = std::min<unsigned>(
            3, ring.kind() == RingKind::Integer ? 3 : ring.exponent());
        auto ppow = [&](unsigned e) {
            mpz_class v;
            mpz_pow_ui(v.get_mpz_t(), p.get_mpz_t(), e);
            return mpq_class(v);
        };
        for (unsigned a = 1; a <= emax; ++a)
            for (unsigned b = 1; b <= emax; ++b) {
                mpq_class ann_a = (ring.kind() == RingKind::Residue && a == ring.exponent())
                                      ? mpq_class(0)
                                      : ppow(a);
                mpq_class ann_b = (ring.kind() == RingKind::Residue && b == ring.exponent())
                                      ? mpq_class(0)
                                      : ppow(b);
                FPModule ma = FPModule::cyclic(ring, ann_a);
                FPModule mb = FPModule::cyclic(ring, ann_b);
                Matrix zero(ring, 1, 1);
                out.objects.emplace_back(ma, mb, zero);
                if (a >= b) {
                    Matrix red(ring, 1, 1);
                    red.set(0, 0, 1);
                    out.objects.emplace_back(ma, mb, red);
                }
            }
    }

    std::mt19937_64 rng(spec.seed);
    while (out.objects.size() < spec.count + 2) {
        FPModule m0 = corpus_module(rng, ring, spec.max_gens, spec.max_exponent);
        FPModule m1 = corpus_module(rng, ring, spec.max_gens, spec.max_exponent);
        HomGroup hg = hom_group(m0, m1);
        out.objects.emplace_back(m0, m1, corpus_hom(rng, hg));
    }
    return out;
}

}  // namespace morphcat

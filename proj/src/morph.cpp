#include "morphcat/morph.hpp"

#include <random>
#include <sstream>

namespace morphcat {

MorphObject::MorphObject(FPModule m0, FPModule m1, ModuleHom mu)
    : m0_(std::move(m0)), m1_(std::move(m1)), mu_(std::move(mu)) {
    if (mu_.source() != m0_ || mu_.target() != m1_)
        fail("InvalidObject", "mu endpoints do not match M0, M1");
}

MorphObject::MorphObject(const FPModule& m0, const FPModule& m1, const Matrix& mu_matrix)
    : MorphObject(m0, m1, ModuleHom(m0, m1, mu_matrix)) {}

MorphObject MorphObject::zero_object(const Ring& ring) {
    FPModule z = FPModule::zero(ring);
    return MorphObject(z, z, ModuleHom::zero(z, z));
}

MorphObject MorphObject::from_matrix(const Matrix& a) {
    FPModule m0 = FPModule::free_module(a.ring(), a.cols());
    FPModule m1 = FPModule::free_module(a.ring(), a.rows());
    return MorphObject(m0, m1, ModuleHom(m0, m1, a, false));
}

MorphMap::MorphMap(MorphObject source, MorphObject target, ModuleHom u0, ModuleHom u1, bool validate)
    : source_(std::move(source)), target_(std::move(target)), u0_(std::move(u0)), u1_(std::move(u1)) {
    if (u0_.source() != source_.m0() || u0_.target() != target_.m0() ||
        u1_.source() != source_.m1() || u1_.target() != target_.m1())
        fail("InvalidMorphMap", "component endpoints do not match");
    if (validate) {
        if (!(u1_.compose(source_.mu()) == target_.mu().compose(u0_)))
            fail("InvalidMorphMap", "square does not commute");
    }
}

MorphMap MorphMap::identity(const MorphObject& m) {
    return MorphMap(m, m, ModuleHom::identity(m.m0()), ModuleHom::identity(m.m1()), false);
}

MorphMap MorphMap::zero(const MorphObject& source, const MorphObject& target) {
    return MorphMap(source, target, ModuleHom::zero(source.m0(), target.m0()),
                    ModuleHom::zero(source.m1(), target.m1()), false);
}

MorphMap MorphMap::compose(const MorphMap& inner) const {
    if (inner.target_ != source_) fail("ShapeMismatch", "morph map composition");
    return MorphMap(inner.source_, target_, u0_.compose(inner.u0_), u1_.compose(inner.u1_), false);
}

MorphMap MorphMap::operator+(const MorphMap& o) const {
    return MorphMap(source_, target_, u0_ + o.u0_, u1_ + o.u1_, false);
}

MorphMap MorphMap::operator-(const MorphMap& o) const {
    return MorphMap(source_, target_, u0_ - o.u0_, u1_ - o.u1_, false);
}

MorphMap MorphMap::scaled(const mpq_class& c) const {
    return MorphMap(source_, target_, u0_.scaled(c), u1_.scaled(c), false);
}

bool MorphMap::operator==(const MorphMap& o) const { return u0_ == o.u0_ && u1_ == o.u1_; }

bool is_morph_iso(const MorphMap& u) { return is_isomorphism(u.u0()) && is_isomorphism(u.u1()); }

std::optional<MorphMap> morph_inverse(const MorphMap& u) {
    auto i0 = inverse_hom(u.u0());
    auto i1 = inverse_hom(u.u1());
    if (!i0 || !i1) return std::nullopt;
    return MorphMap(u.target(), u.source(), std::move(*i0), std::move(*i1));
}

MorphHomSpace hom_space(const MorphObject& m, const MorphObject& n) {
    if (m.ring() != n.ring()) fail("RingMismatch", "hom_space over different rings");
    const Ring& ring = m.ring();
    const std::size_t m0g = m.m0().ngens(), m1g = m.m1().ngens();
    const std::size_t n0g = n.m0().ngens(), n1g = n.m1().ngens();
    const std::size_t m0r = m.m0().relations().cols(), m1r = m.m1().relations().cols();
    const std::size_t n0r = n.m0().relations().cols(), n1r = n.m1().relations().cols();

    // Unknown blocks: U0, U1, then auxiliary Y0, Y1, W witnessing membership
    // in the target relation spans.
    const std::size_t o_u0 = 0, o_u1 = n0g * m0g, o_y0 = o_u1 + n1g * m1g;
    const std::size_t o_y1 = o_y0 + n0r * m0r, o_w = o_y1 + n1r * m1r;
    const std::size_t nvars = o_w + n1r * m0g;
    const std::size_t nrows = n0g * m0r + n1g * m1r + n1g * m0g;

    Matrix eq(ring, nrows, nvars);
    std::size_t row = 0;
    for (std::size_t jr = 0; jr < m0r; ++jr)
        for (std::size_t i = 0; i < n0g; ++i, ++row) {
            for (std::size_t j = 0; j < m0g; ++j)
                eq.set(row, o_u0 + i * m0g + j, m.m0().relations().at(j, jr));
            for (std::size_t t = 0; t < n0r; ++t)
                eq.set(row, o_y0 + t * m0r + jr, ring.neg(n.m0().relations().at(i, t)));
        }
    for (std::size_t jr = 0; jr < m1r; ++jr)
        for (std::size_t i = 0; i < n1g; ++i, ++row) {
            for (std::size_t j = 0; j < m1g; ++j)
                eq.set(row, o_u1 + i * m1g + j, m.m1().relations().at(j, jr));
            for (std::size_t t = 0; t < n1r; ++t)
                eq.set(row, o_y1 + t * m1r + jr, ring.neg(n.m1().relations().at(i, t)));
        }
    for (std::size_t j = 0; j < m0g; ++j)
        for (std::size_t i = 0; i < n1g; ++i, ++row) {
            for (std::size_t k = 0; k < m1g; ++k)
                eq.set(row, o_u1 + i * m1g + k, m.mu().matrix().at(k, j));
            for (std::size_t k = 0; k < n0g; ++k)
                eq.set(row, o_u0 + k * m0g + j, ring.neg(n.mu().matrix().at(i, k)));
            for (std::size_t t = 0; t < n1r; ++t)
                eq.set(row, o_w + t * m0g + j, ring.neg(n.m1().relations().at(i, t)));
        }

    MorphHomSpace out{m, n, {}, {}, {}, 1};
    std::vector<MorphMap> gens;
    for (const auto& k : kernel_generators(eq)) {
        Matrix h0(ring, n0g, m0g), h1(ring, n1g, m1g);
        for (std::size_t i = 0; i < n0g; ++i)
            for (std::size_t j = 0; j < m0g; ++j) h0.set(i, j, k.at(o_u0 + i * m0g + j, 0));
        for (std::size_t i = 0; i < n1g; ++i)
            for (std::size_t j = 0; j < m1g; ++j) h1.set(i, j, k.at(o_u1 + i * m1g + j, 0));
        ModuleHom u0(m.m0(), n.m0(), std::move(h0), false);
        ModuleHom u1(m.m1(), n.m1(), std::move(h1), false);
        MorphMap um(m, n, std::move(u0), std::move(u1), false);
        if (!um.is_zero_map()) gens.push_back(std::move(um));
    }

    std::vector<std::vector<mpq_class>> vecs;
    std::vector<mpq_class> labels;
    for (std::size_t i = 0; i < n0g; ++i)
        for (std::size_t j = 0; j < m0g; ++j) labels.push_back(n.m0().row_labels()[i]);
    for (std::size_t i = 0; i < n1g; ++i)
        for (std::size_t j = 0; j < m1g; ++j) labels.push_back(n.m1().row_labels()[i]);
    for (const auto& g : gens) {
        std::vector<mpq_class> v;
        for (std::size_t i = 0; i < n0g; ++i)
            for (std::size_t j = 0; j < m0g; ++j) v.push_back(g.u0().canonical().at(i, j));
        for (std::size_t i = 0; i < n1g; ++i)
            for (std::size_t j = 0; j < m1g; ++j) v.push_back(g.u1().canonical().at(i, j));
        vecs.push_back(std::move(v));
    }
    SpanDecomposition dec = decompose_span(ring, vecs, labels);
    out.size = dec.size;
    for (std::size_t c = 0; c < dec.combinations.size(); ++c) {
        Matrix h0(ring, n0g, m0g), h1(ring, n1g, m1g);
        for (std::size_t idx = 0; idx < gens.size(); ++idx) {
            const mpq_class& co = dec.combinations[c][idx];
            if (co == 0) continue;
            h0 = h0 + gens[idx].u0().matrix().scaled(co);
            h1 = h1 + gens[idx].u1().matrix().scaled(co);
        }
        MorphMap um(m, n, ModuleHom(m.m0(), n.m0(), std::move(h0), false),
                    ModuleHom(m.m1(), n.m1(), std::move(h1), false), false);
        if (um.is_zero_map()) continue;
        out.cyclic_generators.push_back(std::move(um));
        out.orders.push_back(dec.orders[c]);
    }
    out.generators = std::move(gens);
    return out;
}

std::vector<MorphMap> all_morph_maps(const MorphHomSpace& hs, std::uint64_t cap) {
    if (hs.size == 0 || hs.size > cap)
        fail("TooLarge", "morph hom space of size " +
                             (hs.size == 0 ? std::string("infinity") : hs.size.get_str()) +
                             " exceeds the enumeration ceiling");
    const Ring& ring = hs.source.ring();
    std::vector<MorphMap> out;
    std::vector<mpz_class> ranges = coefficient_ranges(ring, hs.orders);
    enumerate_combinations(ranges, cap, [&](const std::vector<mpz_class>& c) {
        Matrix h0(ring, hs.target.m0().ngens(), hs.source.m0().ngens());
        Matrix h1(ring, hs.target.m1().ngens(), hs.source.m1().ngens());
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) continue;
            h0 = h0 + hs.cyclic_generators[i].u0().matrix().scaled(mpq_class(c[i]));
            h1 = h1 + hs.cyclic_generators[i].u1().matrix().scaled(mpq_class(c[i]));
        }
        out.emplace_back(hs.source, hs.target,
                         ModuleHom(hs.source.m0(), hs.target.m0(), std::move(h0), false),
                         ModuleHom(hs.source.m1(), hs.target.m1(), std::move(h1), false), false);
    });
    return out;
}

MorphDirectSum morph_direct_sum(const std::vector<MorphObject>& parts) {
    if (parts.empty()) fail("InvalidObject", "direct sum of an empty family");
    const Ring& ring = parts[0].ring();
    std::vector<FPModule> m0s, m1s;
    for (const auto& p : parts) {
        if (p.ring() != ring) fail("RingMismatch", "direct sum over different rings");
        m0s.push_back(p.m0());
        m1s.push_back(p.m1());
    }
    ModuleDirectSum s0 = direct_sum(m0s);
    ModuleDirectSum s1 = direct_sum(m1s);
    Matrix mu(ring, s1.module.ngens(), s0.module.ngens());
    for (std::size_t i = 0; i < parts.size(); ++i)
        mu = mu + s1.injections[i].matrix() * parts[i].mu().matrix() * s0.projections[i].matrix();
    MorphObject sum(s0.module, s1.module, ModuleHom(s0.module, s1.module, std::move(mu), false));

    MorphDirectSum out{sum, {}, {}};
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out.injections.emplace_back(parts[i], sum, s0.injections[i], s1.injections[i], false);
        out.projections.emplace_back(sum, parts[i], s0.projections[i], s1.projections[i], false);
    }
    return out;
}

FPModule functor_D(const MorphObject& m) { return m.m0(); }
FPModule functor_C(const MorphObject& m) { return m.m1(); }
KernelResult functor_Ker(const MorphObject& m) { return kernel(m.mu()); }
CokernelResult functor_Coker(const MorphObject& m) { return cokernel(m.mu()); }

ModuleHom functor_D_map(const MorphMap& u) { return u.u0(); }
ModuleHom functor_C_map(const MorphMap& u) { return u.u1(); }

ModuleHom functor_Ker_map(const MorphMap& u) {
    KernelResult ks = functor_Ker(u.source());
    KernelResult kt = functor_Ker(u.target());
    auto h = factor_through(u.u0().compose(ks.inclusion), kt.inclusion);
    if (!h) fail("InvalidMorphMap", "kernel restriction does not factor");
    return *h;
}

ModuleHom functor_Coker_map(const MorphMap& u) {
    CokernelResult cs = functor_Coker(u.source());
    CokernelResult ct = functor_Coker(u.target());
    return ModuleHom(cs.module, ct.module, u.u1().matrix());
}

SequenceReport verify_canonical_sequence(const MorphObject& m) {
    const Ring& ring = m.ring();
    SequenceReport rep;

    KernelResult k = kernel(m.mu());
    ModuleDirectSum b = direct_sum({m.m0(), m.m1()});
    CokernelResult ck = cokernel(m.mu());
    ModuleDirectSum t = direct_sum({m.m0(), ck.module});

    ModuleHom map1 = k.inclusion;
    ModuleHom map2 = b.injections[1].compose(m.mu());
    // (identity (+) projection) minus the shear through mu.
    std::size_t g0 = m.m0().ngens(), g1 = m.m1().ngens();
    Matrix m3(ring, g0 + g1, g0 + g1);
    Matrix shear = ck.projection.matrix() * m.mu().matrix();
    for (std::size_t i = 0; i < g0; ++i) m3.set(i, i, 1);
    for (std::size_t i = 0; i < g1; ++i)
        for (std::size_t j = 0; j < g0; ++j) m3.set(g0 + i, j, ring.neg(shear.at(i, j)));
    for (std::size_t i = 0; i < g1; ++i)
        for (std::size_t j = 0; j < g1; ++j) m3.set(g0 + i, g0 + j, ck.projection.matrix().at(i, j));
    ModuleHom map3(b.module, t.module, std::move(m3));

    rep.exact_at_kernel = is_injective(map1);
    if (!rep.exact_at_kernel) rep.failure = "kernel inclusion not injective";

    bool comp21 = map2.compose(map1).is_zero_map();
    bool ker2_in_im1 = true;
    KernelResult k2 = kernel(map2);
    for (std::size_t j = 0; j < k2.module.ngens(); ++j)
        if (!in_image(map1, k2.inclusion.matrix().col(j))) ker2_in_im1 = false;
    rep.exact_at_domain = comp21 && ker2_in_im1;
    if (!rep.exact_at_domain && rep.failure.empty()) rep.failure = "failure at the domain position";

    bool comp32 = map3.compose(map2).is_zero_map();
    bool ker3_in_im2 = true;
    KernelResult k3 = kernel(map3);
    for (std::size_t j = 0; j < k3.module.ngens(); ++j)
        if (!in_image(map2, k3.inclusion.matrix().col(j))) ker3_in_im2 = false;
    rep.exact_at_middle = comp32 && ker3_in_im2;
    if (!rep.exact_at_middle && rep.failure.empty()) rep.failure = "failure at the middle position";

    rep.exact_at_end = is_surjective(map3);
    if (!rep.exact_at_end && rep.failure.empty()) rep.failure = "final map not surjective";

    if (ring.is_field()) {
        rep.dims = {k.module.invariants().dimension(), m.m0().invariants().dimension(),
                    b.module.invariants().dimension(), t.module.invariants().dimension()};
        long alt = static_cast<long>(rep.dims[0]) - static_cast<long>(rep.dims[1]) +
                   static_cast<long>(rep.dims[2]) - static_cast<long>(rep.dims[3]);
        rep.alternating_sum_zero = (alt == 0);
        if (!rep.alternating_sum_zero && rep.failure.empty())
            rep.failure = "alternating dimension sum nonzero";
    }
    return rep;
}

RankForm rank_form(const MorphObject& m) {
    if (!m.ring().is_field()) fail("NonFieldRing", "rank_form requires a field");
    const Ring& ring = m.ring();
    VectorSpaceCoords c0 = vector_space_coords(m.m0());
    VectorSpaceCoords c1 = vector_space_coords(m.m1());
    Matrix a = c1.to_coords.matrix() * m.mu().matrix() * c0.from_coords.matrix();
    SmithDecomposition sd = smith_normal_form(a);
    std::size_t r = 0;
    for (const auto& d : sd.elementary_divisors)
        if (d == 1) ++r;

    MorphObject canonical = MorphObject::from_matrix(sd.d);
    auto vinv = inverse(sd.v);
    auto uinv = inverse(sd.u);
    if (!vinv || !uinv) fail("InvalidMatrix", "rank form transform not invertible");

    ModuleHom to0(m.m0(), canonical.m0(), *vinv * c0.to_coords.matrix(), false);
    ModuleHom to1(m.m1(), canonical.m1(), sd.u * c1.to_coords.matrix(), false);
    MorphMap to_c(m, canonical, std::move(to0), std::move(to1));

    ModuleHom from0(canonical.m0(), m.m0(), c0.from_coords.matrix() * sd.v, false);
    ModuleHom from1(canonical.m1(), m.m1(), c1.from_coords.matrix() * *uinv, false);
    MorphMap from_c(canonical, m, std::move(from0), std::move(from1));

    return RankForm{c0.dim, c1.dim, r, std::move(canonical), std::move(to_c), std::move(from_c)};
}

namespace {

std::string invariant_certificate(const char* functor, const ModuleInvariants& a,
                                  const ModuleInvariants& b) {
    std::ostringstream os;
    os << functor << " invariants differ: " << a.describe() << " vs " << b.describe();
    return os.str();
}

}  // namespace

IsoResult iso_test(const MorphObject& m, const MorphObject& n, const DecisionPolicy& policy) {
    if (m.ring() != n.ring()) fail("RingMismatch", "iso_test over different rings");
    const Ring& ring = m.ring();

    auto md = m.m0().invariants(), nd = n.m0().invariants();
    if (md != nd) return {IsoVerdict::NotIsomorphic, std::nullopt, invariant_certificate("D", md, nd)};
    auto mc = m.m1().invariants(), nc = n.m1().invariants();
    if (mc != nc) return {IsoVerdict::NotIsomorphic, std::nullopt, invariant_certificate("C", mc, nc)};
    auto mk = functor_Ker(m).module.invariants(), nk = functor_Ker(n).module.invariants();
    if (mk != nk) return {IsoVerdict::NotIsomorphic, std::nullopt, invariant_certificate("Ker", mk, nk)};
    auto mq = functor_Coker(m).module.invariants(), nq = functor_Coker(n).module.invariants();
    if (mq != nq)
        return {IsoVerdict::NotIsomorphic, std::nullopt, invariant_certificate("Coker", mq, nq)};

    if (ring.is_field()) {
        // Over a field (dim M0, dim M1, rank mu) is a complete invariant; the
        // prechecks above matched, so build the explicit witness.
        RankForm fm = rank_form(m);
        RankForm fn = rank_form(n);
        MorphMap w = fn.from_canonical.compose(fm.to_canonical);
        return {IsoVerdict::Isomorphic, std::move(w), "field rank form witness"};
    }

    MorphHomSpace hs = hom_space(m, n);
    if (hs.size != 0 && hs.size <= policy.max_exhaustive) {
        for (auto& u : all_morph_maps(hs, policy.max_exhaustive)) {
            if (is_morph_iso(u))
                return {IsoVerdict::Isomorphic, std::move(u), "exhaustive search witness"};
        }
        return {IsoVerdict::NotIsomorphic, std::nullopt,
                "exhausted " + hs.size.get_str() + " candidate maps"};
    }

    std::mt19937_64 rng(policy.seed);
    std::vector<mpz_class> ranges = coefficient_ranges(ring, hs.orders);
    for (unsigned trial = 0; trial < policy.trials; ++trial) {
        Matrix h0(ring, n.m0().ngens(), m.m0().ngens());
        Matrix h1(ring, n.m1().ngens(), m.m1().ngens());
        for (std::size_t i = 0; i < hs.cyclic_generators.size(); ++i) {
            mpq_class c;
            if (ranges[i] != 0) {
                c = mpq_class(mpz_class(rng() % ranges[i].get_ui()));
            } else {
                long b = policy.coeff_bound;
                c = mpq_class(static_cast<long>(rng() % (2 * b + 1)) - b);
            }
            if (c == 0) continue;
            h0 = h0 + hs.cyclic_generators[i].u0().matrix().scaled(c);
            h1 = h1 + hs.cyclic_generators[i].u1().matrix().scaled(c);
        }
        MorphMap u(m, n, ModuleHom(m.m0(), n.m0(), std::move(h0), false),
                   ModuleHom(m.m1(), n.m1(), std::move(h1), false), false);
        if (is_morph_iso(u))
            return {IsoVerdict::Isomorphic, std::move(u), "randomized search witness"};
    }
    return {IsoVerdict::Undecided, std::nullopt,
            "no witness in " + std::to_string(policy.trials) + " randomized trials"};
}

}  // namespace morphcat

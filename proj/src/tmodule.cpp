#include "morphcat/tmodule.hpp"

namespace morphcat {

void validate_t_module(const TModuleRep& n) {
    const FPModule& u = n.underlying;
    if (n.e11_action.source() != u || n.e11_action.target() != u ||
        n.e22_action.source() != u || n.e22_action.target() != u ||
        n.e12_action.source() != u || n.e12_action.target() != u)
        fail("InvalidAction", "structural operators must be endomorphisms of the underlying module");
    ModuleHom id = ModuleHom::identity(u);
    if (!(n.e11_action + n.e22_action == id))
        fail("InvalidAction", "e11 + e22 is not the identity");
    if (!(n.e11_action.compose(n.e11_action) == n.e11_action))
        fail("InvalidAction", "e11 is not idempotent");
    if (!(n.e22_action.compose(n.e22_action) == n.e22_action))
        fail("InvalidAction", "e22 is not idempotent");
    if (!n.e11_action.compose(n.e22_action).is_zero_map() ||
        !n.e22_action.compose(n.e11_action).is_zero_map())
        fail("InvalidAction", "e11 and e22 are not orthogonal");
    if (!n.e12_action.compose(n.e12_action).is_zero_map())
        fail("InvalidAction", "e12 does not square to zero");
    if (!(n.e22_action.compose(n.e12_action.compose(n.e11_action)) == n.e12_action))
        fail("InvalidAction", "e12 does not route the first summand into the second");
}

TModuleRep functor_F(const MorphObject& m) {
    ModuleDirectSum s = direct_sum({m.m0(), m.m1()});
    ModuleHom e11 = s.injections[0].compose(s.projections[0]);
    ModuleHom e22 = s.injections[1].compose(s.projections[1]);
    ModuleHom e12 = s.injections[1].compose(m.mu()).compose(s.projections[0]);
    return TModuleRep{s.module, std::move(e11), std::move(e22), std::move(e12)};
}

ModuleHom functor_F_map(const MorphMap& u) {
    TModuleRep fs = functor_F(u.source());
    TModuleRep ft = functor_F(u.target());
    const Ring& ring = u.source().ring();
    std::size_t sg0 = u.source().m0().ngens(), sg1 = u.source().m1().ngens();
    std::size_t tg0 = u.target().m0().ngens(), tg1 = u.target().m1().ngens();
    Matrix w(ring, tg0 + tg1, sg0 + sg1);
    for (std::size_t i = 0; i < tg0; ++i)
        for (std::size_t j = 0; j < sg0; ++j) w.set(i, j, u.u0().matrix().at(i, j));
    for (std::size_t i = 0; i < tg1; ++i)
        for (std::size_t j = 0; j < sg1; ++j) w.set(tg0 + i, sg0 + j, u.u1().matrix().at(i, j));
    return ModuleHom(fs.underlying, ft.underlying, std::move(w));
}

MorphObject functor_G(const TModuleRep& n) {
    validate_t_module(n);
    ImageResult im0 = image(n.e11_action);
    ImageResult im1 = image(n.e22_action);
    auto mu = factor_through(n.e12_action.compose(im0.inclusion), im1.inclusion);
    if (!mu) fail("InvalidAction", "e12 action does not land in the second summand");
    return MorphObject(im0.module, im1.module, std::move(*mu));
}

MorphMap roundtrip_iso(const MorphObject& m) {
    TModuleRep f = functor_F(m);
    MorphObject gf = functor_G(f);
    ModuleDirectSum s = direct_sum({m.m0(), m.m1()});
    // G presents each summand on the images of the idempotents; project back.
    ImageResult im0 = image(f.e11_action);
    ImageResult im1 = image(f.e22_action);
    ModuleHom r0 = s.projections[0].compose(im0.inclusion);
    ModuleHom r0m(gf.m0(), m.m0(), r0.matrix());
    ModuleHom r1 = s.projections[1].compose(im1.inclusion);
    ModuleHom r1m(gf.m1(), m.m1(), r1.matrix());
    return MorphMap(gf, m, std::move(r0m), std::move(r1m));
}

namespace {

struct TElem {
    mpz_class r, s, t;  // [[r, s], [0, t]]
};

TElem tmul(const Ring& ring, const TElem& a, const TElem& b) {
    auto norm = [&](const mpz_class& x) { return ring.normalize(mpq_class(x)).get_num(); };
    return TElem{norm(a.r * b.r), norm(a.r * b.s + a.s * b.t), norm(a.t * b.t)};
}

}  // namespace

IdealCheckReport check_ideal_lemmas(const Ring& ring) {
    if (!ring.is_finite()) fail("UnsupportedRing", "ideal lemma checks need a finite base ring");
    long n = static_cast<long>(ring.modulus().get_ui());
    IdealCheckReport rep;

    // I^2 = 0, elementwise.
    rep.squares_to_zero = true;
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) {
            TElem p = tmul(ring, TElem{0, a, 0}, TElem{0, b, 0});
            if (p.r != 0 || p.s != 0 || p.t != 0) rep.squares_to_zero = false;
        }

    // T/I multiplies like R x R: the diagonal of a product depends only on
    // the diagonals of the factors, and the class map is a bijection onto R^2.
    rep.quotient_is_product = true;
    std::vector<TElem> all;
    for (long r = 0; r < n; ++r)
        for (long s = 0; s < n; ++s)
            for (long t = 0; t < n; ++t) all.push_back(TElem{r, s, t});
    for (const auto& a : all)
        for (const auto& b : all) {
            TElem p = tmul(ring, a, b);
            TElem q = tmul(ring, TElem{a.r, 0, a.t}, TElem{b.r, 0, b.t});
            if (p.r != q.r || p.t != q.t) rep.quotient_is_product = false;
        }

    // No splitting: no t with I*t = 0 and 1 - t in I.
    rep.no_splitting = true;
    for (const auto& t : all) {
        bool kills = true;
        for (long a = 0; a < n && kills; ++a) {
            TElem p = tmul(ring, TElem{0, a, 0}, t);
            if (p.r != 0 || p.s != 0 || p.t != 0) kills = false;
        }
        if (!kills) continue;
        mpz_class dr = ring.normalize(mpq_class(1 - t.r)).get_num();
        mpz_class dt = ring.normalize(mpq_class(1 - t.t)).get_num();
        if (dr == 0 && dt == 0) rep.no_splitting = false;  // 1 - t lies in I
    }
    rep.elements_checked = static_cast<long>(all.size());
    return rep;
}

}  // namespace morphcat

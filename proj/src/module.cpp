#include "morphcat/module.hpp"

#include <algorithm>
#include <sstream>

namespace morphcat {

namespace {

// Reduction label of a canonical free summand: Z/p^k itself over residue
// rings (reduction mod p^k is a no-op on canonical representatives), 0
// elsewhere (no reduction).
mpq_class free_label(const Ring& ring) {
    if (ring.kind() == RingKind::Residue) return mpq_class(ring.modulus());
    return 0;
}

mpq_class reduce_by_label(const Ring& ring, const mpq_class& x, const mpq_class& label) {
    if (label == 0) return ring.normalize(x);
    if (label == 1) return 0;
    mpz_class r;
    mpz_class v = ring.normalize(x).get_num();
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), label.get_num().get_mpz_t());
    return mpq_class(r);
}

// Number of elements of R/(label); 0 = infinite.
mpz_class label_cardinality(const Ring& ring, const mpq_class& label) {
    if (label == 1) return 1;
    if (label == 0) {
        if (ring.kind() == RingKind::PrimeField) return ring.modulus();
        return 0;
    }
    return label.get_num();
}

}  // namespace

bool ModuleInvariants::is_uniserial() const {
    if (ring.is_field()) return divisors.size() <= 1;
    if (divisors.size() != 1) return false;
    if (ring.kind() == RingKind::Residue) return true;  // labels are p^e by construction
    return divisors[0] != 0 && is_prime_power(divisors[0].get_num());
}

std::string ModuleInvariants::describe() const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < divisors.size(); ++i) os << (i ? "," : "") << divisors[i].get_str();
    os << "}";
    return os.str();
}

FPModule::FPModule(Ring ring, std::size_t ngens, Matrix relations)
    : ring_(std::move(ring)), ngens_(ngens), relations_(std::move(relations)) {
    if (relations_.rows() != ngens_) fail("InvalidModule", "relation rows must equal ngens");
    if (relations_.ring() != ring_) fail("RingMismatch", "relations over wrong ring");
    auto cache = std::make_shared<Cache>(Cache{smith_normal_form(relations_), {}, {ring_, {}}});
    std::size_t slots = std::min(relations_.rows(), relations_.cols());
    for (std::size_t i = 0; i < ngens_; ++i) {
        mpq_class label = i < slots ? cache->smith.elementary_divisors[i] : free_label(ring_);
        cache->row_labels.push_back(label);
        if (!(label == 1)) cache->invariants.divisors.push_back(label);
    }
    // Ascending by divisibility: nonzero values ascending, free summands last.
    std::sort(cache->invariants.divisors.begin(), cache->invariants.divisors.end(),
              [](const mpq_class& a, const mpq_class& b) {
                  if (a == 0) return false;
                  if (b == 0) return true;
                  return a < b;
              });
    cache_ = std::move(cache);
}

FPModule FPModule::free_module(const Ring& ring, std::size_t n) {
    return FPModule(ring, n, Matrix(ring, n, 0));
}

FPModule FPModule::cyclic(const Ring& ring, const mpq_class& annihilator) {
    Matrix rel(ring, 1, 1);
    rel.set(0, 0, annihilator);
    return FPModule(ring, 1, rel);
}

ModuleInvariants canonical_invariants(const FPModule& m) { return m.invariants(); }

Matrix canonical_hom_matrix(const FPModule& target, const Matrix& gen_matrix) {
    Matrix c = target.relations_smith().u * gen_matrix;
    const auto& labels = target.row_labels();
    Matrix out(c.ring(), c.rows(), c.cols());
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j)
            out.set(i, j, reduce_by_label(c.ring(), c.at(i, j), labels[i]));
    return out;
}

ModuleHom::ModuleHom(FPModule source, FPModule target, Matrix gen_matrix, bool validate)
    : source_(std::move(source)),
      target_(std::move(target)),
      matrix_(std::move(gen_matrix)),
      canonical_(canonical_hom_matrix(target_, matrix_)) {
    if (matrix_.rows() != target_.ngens() || matrix_.cols() != source_.ngens())
        fail("InvalidHom", "gen_matrix shape mismatch");
    if (source_.ring() != target_.ring()) fail("RingMismatch", "hom between different rings");
    if (validate && source_.relations().cols() > 0) {
        Matrix mapped = matrix_ * source_.relations();
        if (!solve_matrix(target_.relations(), mapped).has_value())
            fail("InvalidHom", "map does not respect the source relations");
    }
}

ModuleHom ModuleHom::zero(const FPModule& source, const FPModule& target) {
    return ModuleHom(source, target, Matrix(source.ring(), target.ngens(), source.ngens()), false);
}

ModuleHom ModuleHom::identity(const FPModule& m) {
    return ModuleHom(m, m, Matrix::identity(m.ring(), m.ngens()), false);
}

ModuleHom ModuleHom::compose(const ModuleHom& inner) const {
    if (inner.target_ != source_) fail("ShapeMismatch", "hom composition domain mismatch");
    return ModuleHom(inner.source_, target_, matrix_ * inner.matrix_, false);
}

ModuleHom ModuleHom::operator+(const ModuleHom& o) const {
    if (source_ != o.source_ || target_ != o.target_) fail("ShapeMismatch", "hom sum");
    return ModuleHom(source_, target_, matrix_ + o.matrix_, false);
}

ModuleHom ModuleHom::operator-(const ModuleHom& o) const {
    if (source_ != o.source_ || target_ != o.target_) fail("ShapeMismatch", "hom difference");
    return ModuleHom(source_, target_, matrix_ - o.matrix_, false);
}

ModuleHom ModuleHom::scaled(const mpq_class& c) const {
    return ModuleHom(source_, target_, matrix_.scaled(c), false);
}

bool ModuleHom::operator==(const ModuleHom& o) const {
    return source_ == o.source_ && target_ == o.target_ && canonical_ == o.canonical_;
}

KernelResult kernel(const ModuleHom& f) {
    const Ring& ring = f.source().ring();
    Matrix lifted = f.matrix().hstack(f.target().relations());
    std::vector<Matrix> gens = kernel_generators(lifted);
    std::vector<Matrix> cols;
    for (const auto& g : gens) {
        Matrix x = g.submatrix(0, 0, f.source().ngens(), 1);
        if (!x.is_zero()) cols.push_back(std::move(x));
    }
    Matrix kmat(ring, f.source().ngens(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < f.source().ngens(); ++i) kmat.set(i, j, cols[j].at(i, 0));

    // Relations among the kernel generators inside the source module.
    Matrix rel_system = kmat.hstack(f.source().relations());
    std::vector<Matrix> rel_gens = kernel_generators(rel_system);
    std::vector<Matrix> rel_cols;
    for (const auto& g : rel_gens) {
        Matrix c = g.submatrix(0, 0, cols.size(), 1);
        if (!c.is_zero()) rel_cols.push_back(std::move(c));
    }
    Matrix krel(ring, cols.size(), rel_cols.size());
    for (std::size_t j = 0; j < rel_cols.size(); ++j)
        for (std::size_t i = 0; i < cols.size(); ++i) krel.set(i, j, rel_cols[j].at(i, 0));

    FPModule k(ring, cols.size(), krel);
    ModuleHom incl(k, f.source(), kmat, false);
    return KernelResult{std::move(k), std::move(incl)};
}

CokernelResult cokernel(const ModuleHom& f) {
    const Ring& ring = f.source().ring();
    Matrix rel = f.matrix().hstack(f.target().relations());
    FPModule c(ring, f.target().ngens(), rel);
    ModuleHom proj(f.target(), c, Matrix::identity(ring, f.target().ngens()), false);
    return CokernelResult{std::move(c), std::move(proj)};
}

namespace {

// Maps between free modules over a field are decided by a single rank.
bool free_field_case(const ModuleHom& f, bool* injective, bool* surjective) {
    if (!f.source().ring().is_field()) return false;
    if (f.source().relations().cols() != 0 || f.target().relations().cols() != 0) return false;
    std::size_t r = rank(f.matrix());
    if (injective) *injective = (r == f.source().ngens());
    if (surjective) *surjective = (r == f.target().ngens());
    return true;
}

}  // namespace

bool is_injective(const ModuleHom& f) {
    bool inj = false;
    if (free_field_case(f, &inj, nullptr)) return inj;
    return kernel(f).module.invariants().is_zero();
}

bool is_surjective(const ModuleHom& f) {
    bool sur = false;
    if (free_field_case(f, nullptr, &sur)) return sur;
    return cokernel(f).module.invariants().is_zero();
}

bool is_isomorphism(const ModuleHom& f) {
    bool inj = false, sur = false;
    if (free_field_case(f, &inj, &sur)) return inj && sur;
    return is_injective(f) && is_surjective(f);
}

std::optional<ModuleHom> inverse_hom(const ModuleHom& f) {
    if (!is_isomorphism(f)) return std::nullopt;
    const Ring& ring = f.source().ring();
    Matrix lifted = f.matrix().hstack(f.target().relations());
    Matrix g(ring, f.source().ngens(), f.target().ngens());
    for (std::size_t j = 0; j < f.target().ngens(); ++j) {
        Matrix e(ring, f.target().ngens(), 1);
        e.set(j, 0, 1);
        LinearSolution s = solve_linear(lifted, e);
        if (!s.solvable) return std::nullopt;  // cannot happen for an isomorphism
        for (std::size_t i = 0; i < f.source().ngens(); ++i) g.set(i, j, s.particular.at(i, 0));
    }
    return ModuleHom(f.target(), f.source(), g);
}

ModuleDirectSum direct_sum(const std::vector<FPModule>& parts) {
    if (parts.empty()) fail("InvalidModule", "direct sum of an empty family");
    const Ring& ring = parts[0].ring();
    std::size_t total_g = 0, total_r = 0;
    for (const auto& p : parts) {
        if (p.ring() != ring) fail("RingMismatch", "direct sum over different rings");
        total_g += p.ngens();
        total_r += p.relations().cols();
    }
    Matrix rel(ring, total_g, total_r);
    std::size_t go = 0, ro = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.ngens(); ++i)
            for (std::size_t j = 0; j < p.relations().cols(); ++j)
                rel.set(go + i, ro + j, p.relations().at(i, j));
        go += p.ngens();
        ro += p.relations().cols();
    }
    FPModule sum(ring, total_g, rel);

    ModuleDirectSum out{std::move(sum), {}, {}};
    go = 0;
    for (const auto& p : parts) {
        Matrix inj(ring, total_g, p.ngens());
        Matrix prj(ring, p.ngens(), total_g);
        for (std::size_t i = 0; i < p.ngens(); ++i) {
            inj.set(go + i, i, 1);
            prj.set(i, go + i, 1);
        }
        out.injections.emplace_back(p, out.module, inj, false);
        out.projections.emplace_back(out.module, p, prj, false);
        go += p.ngens();
    }
    return out;
}

bool in_image(const ModuleHom& f, const Matrix& element) {
    Matrix lifted = f.matrix().hstack(f.target().relations());
    return solve_linear(lifted, element).solvable;
}

ImageResult image(const ModuleHom& f) {
    const Ring& ring = f.source().ring();
    Matrix lifted = f.matrix().hstack(f.target().relations());
    std::vector<Matrix> rel_gens = kernel_generators(lifted);
    std::vector<Matrix> rel_cols;
    for (const auto& g : rel_gens) {
        Matrix c = g.submatrix(0, 0, f.source().ngens(), 1);
        if (!c.is_zero()) rel_cols.push_back(std::move(c));
    }
    Matrix rel(ring, f.source().ngens(), rel_cols.size());
    for (std::size_t j = 0; j < rel_cols.size(); ++j)
        for (std::size_t i = 0; i < f.source().ngens(); ++i) rel.set(i, j, rel_cols[j].at(i, 0));
    FPModule im(ring, f.source().ngens(), rel);
    ModuleHom incl(im, f.target(), f.matrix(), false);
    return ImageResult{std::move(im), std::move(incl)};
}

std::optional<ModuleHom> factor_through(const ModuleHom& f, const ModuleHom& g) {
    if (f.target() != g.target()) fail("ShapeMismatch", "factor_through targets differ");
    const Ring& ring = f.source().ring();
    Matrix lifted = g.matrix().hstack(g.target().relations());
    Matrix h(ring, g.source().ngens(), f.source().ngens());
    for (std::size_t j = 0; j < f.source().ngens(); ++j) {
        LinearSolution s = solve_linear(lifted, f.matrix().col(j));
        if (!s.solvable) return std::nullopt;
        for (std::size_t i = 0; i < g.source().ngens(); ++i) h.set(i, j, s.particular.at(i, 0));
    }
    // h must respect the source relations to be a hom at all.
    if (f.source().relations().cols() > 0) {
        Matrix mapped = h * f.source().relations();
        if (!solve_matrix(g.source().relations(), mapped).has_value()) return std::nullopt;
    }
    return ModuleHom(f.source(), g.source(), h, false);
}

SpanDecomposition decompose_span(const Ring& ring, const std::vector<std::vector<mpq_class>>& vectors,
                                 const std::vector<mpq_class>& labels) {
    std::size_t t = vectors.size();
    if (t == 0) return SpanDecomposition{{}, {}, 1};
    std::size_t dim = labels.size();

    // Active ambient coordinates and their aux-variable multipliers.
    std::vector<std::size_t> active;
    std::vector<mpq_class> aux_mult;  // 0 = exact equation
    for (std::size_t i = 0; i < dim; ++i) {
        if (labels[i] == 1) continue;  // dead coordinate, entries are reduced to 0
        bool needs_aux = false;
        mpq_class mult = 0;
        if (labels[i] != 0) {
            if (ring.kind() == RingKind::Residue && labels[i].get_num() == ring.modulus()) {
                needs_aux = false;  // reduction mod p^k is ring arithmetic
            } else {
                needs_aux = true;
                mult = labels[i];
            }
        }
        active.push_back(i);
        aux_mult.push_back(needs_aux ? mult : mpq_class(0));
    }

    std::size_t naux = 0;
    for (const auto& m : aux_mult)
        if (m != 0) ++naux;

    Matrix eq(ring, active.size(), t + naux);
    std::size_t aux_col = t;
    for (std::size_t r = 0; r < active.size(); ++r) {
        for (std::size_t c = 0; c < t; ++c) eq.set(r, c, vectors[c][active[r]]);
        if (aux_mult[r] != 0) eq.set(r, aux_col++, aux_mult[r]);
    }

    std::vector<Matrix> lattice = kernel_generators(eq);
    std::vector<Matrix> ccols;
    for (const auto& g : lattice) {
        Matrix c = g.submatrix(0, 0, t, 1);
        if (!c.is_zero()) ccols.push_back(std::move(c));
    }
    Matrix cmat(ring, t, ccols.size());
    for (std::size_t j = 0; j < ccols.size(); ++j)
        for (std::size_t i = 0; i < t; ++i) cmat.set(i, j, ccols[j].at(i, 0));

    FPModule quotient(ring, t, cmat);
    auto uinv = inverse(quotient.relations_smith().u);
    if (!uinv) fail("InvalidMatrix", "Smith transform not invertible");

    SpanDecomposition out{{}, {}, 1};
    const auto& orders = quotient.row_labels();
    for (std::size_t i = 0; i < t; ++i) {
        mpz_class card = label_cardinality(ring, orders[i]);
        if (card == 0)
            out.size = 0;
        else if (out.size != 0)
            out.size *= card;
        if (orders[i] == 1) continue;
        std::vector<mpq_class> combo;
        for (std::size_t j = 0; j < t; ++j) combo.push_back(uinv->at(j, i));
        out.combinations.push_back(std::move(combo));
        out.orders.push_back(orders[i]);
    }
    return out;
}

HomGroup hom_group(const FPModule& m, const FPModule& n) {
    if (m.ring() != n.ring()) fail("RingMismatch", "hom_group over different rings");
    const Ring& ring = m.ring();
    std::size_t mg = m.ngens(), ng = n.ngens();
    std::size_t mr = m.relations().cols(), nr = n.relations().cols();

    HomGroup out{m, n, {}, {}, {}, 1};
    if (mg == 0 || ng == 0) return out;

    // Unknowns: H (ng x mg) flattened row-major, then Y (nr x mr) flattened.
    std::size_t nh = ng * mg, ny = nr * mr;
    Matrix eq(ring, ng * mr, nh + ny);
    for (std::size_t jr = 0; jr < mr; ++jr)
        for (std::size_t i = 0; i < ng; ++i) {
            std::size_t row = jr * ng + i;
            for (std::size_t j = 0; j < mg; ++j) eq.set(row, i * mg + j, m.relations().at(j, jr));
            for (std::size_t tcol = 0; tcol < nr; ++tcol)
                eq.set(row, nh + tcol * mr + jr, ring.neg(n.relations().at(i, tcol)));
        }

    std::vector<ModuleHom> gens;
    if (mr == 0) {
        // No source relations: every matrix is a hom; use the standard basis.
        for (std::size_t i = 0; i < ng; ++i)
            for (std::size_t j = 0; j < mg; ++j) {
                Matrix h(ring, ng, mg);
                h.set(i, j, 1);
                ModuleHom f(m, n, std::move(h), false);
                if (!f.is_zero_map()) gens.push_back(std::move(f));
            }
    } else {
        for (const auto& k : kernel_generators(eq)) {
            Matrix h(ring, ng, mg);
            for (std::size_t i = 0; i < ng; ++i)
                for (std::size_t j = 0; j < mg; ++j) h.set(i, j, k.at(i * mg + j, 0));
            ModuleHom f(m, n, std::move(h), false);
            if (!f.is_zero_map()) gens.push_back(std::move(f));
        }
    }

    // Cyclic decomposition in the canonical-coordinate ambient group.
    std::vector<std::vector<mpq_class>> vecs;
    std::vector<mpq_class> labels;
    for (std::size_t i = 0; i < ng; ++i)
        for (std::size_t j = 0; j < mg; ++j) labels.push_back(n.row_labels()[i]);
    for (const auto& g : gens) {
        std::vector<mpq_class> v;
        for (std::size_t i = 0; i < ng; ++i)
            for (std::size_t j = 0; j < mg; ++j) v.push_back(g.canonical().at(i, j));
        vecs.push_back(std::move(v));
    }
    SpanDecomposition dec = decompose_span(ring, vecs, labels);
    out.size = dec.size;
    for (std::size_t c = 0; c < dec.combinations.size(); ++c) {
        Matrix h(ring, ng, mg);
        for (std::size_t idx = 0; idx < gens.size(); ++idx) {
            if (dec.combinations[c][idx] == 0) continue;
            h = h + gens[idx].matrix().scaled(dec.combinations[c][idx]);
        }
        ModuleHom f(m, n, std::move(h), false);
        if (f.is_zero_map()) continue;
        out.cyclic_generators.push_back(std::move(f));
        out.orders.push_back(dec.orders[c]);
    }
    out.generators = std::move(gens);
    return out;
}

bool enumerate_combinations(const std::vector<mpz_class>& ranges, std::uint64_t cap,
                            const std::function<void(const std::vector<mpz_class>&)>& fn) {
    mpz_class total = 1;
    for (const auto& r : ranges) {
        if (r == 0) return false;
        total *= r;
        if (total > cap) return false;
    }
    std::vector<mpz_class> c(ranges.size(), 0);
    for (;;) {
        fn(c);
        std::size_t i = 0;
        while (i < c.size()) {
            c[i] += 1;
            if (c[i] < ranges[i]) break;
            c[i] = 0;
            ++i;
        }
        if (i == c.size()) break;
        if (c.empty()) break;
    }
    return true;
}

std::vector<mpz_class> coefficient_ranges(const Ring& ring, const std::vector<mpq_class>& orders) {
    std::vector<mpz_class> out;
    for (const auto& o : orders) out.push_back(label_cardinality(ring, o));
    return out;
}

std::vector<ModuleHom> all_homs(const HomGroup& hg, std::uint64_t cap) {
    if (hg.size == 0 || hg.size > cap)
        fail("TooLarge", "hom group of size " + (hg.size == 0 ? std::string("infinity") : hg.size.get_str()) +
                             " exceeds the enumeration ceiling");
    std::vector<ModuleHom> out;
    std::vector<mpz_class> ranges = coefficient_ranges(hg.source.ring(), hg.orders);
    enumerate_combinations(ranges, cap, [&](const std::vector<mpz_class>& c) {
        Matrix h(hg.source.ring(), hg.target.ngens(), hg.source.ngens());
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) continue;
            h = h + hg.cyclic_generators[i].matrix().scaled(mpq_class(c[i]));
        }
        out.emplace_back(hg.source, hg.target, std::move(h), false);
    });
    return out;
}

VectorSpaceCoords vector_space_coords(const FPModule& m) {
    if (!m.ring().is_field()) fail("NonFieldRing", "vector_space_coords requires a field");
    const Ring& ring = m.ring();
    std::size_t g = m.ngens();
    // Row space of relationsᵀ = relation span; non-pivot coordinates form a
    // basis of the quotient.
    RrefResult rr = rref(m.relations().transposed());
    std::vector<bool> is_pivot(g, false);
    for (auto c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<std::size_t> free_coords;
    for (std::size_t j = 0; j < g; ++j)
        if (!is_pivot[j]) free_coords.push_back(j);
    std::size_t d = free_coords.size();

    Matrix from(ring, g, d);
    for (std::size_t c = 0; c < d; ++c) from.set(free_coords[c], c, 1);
    Matrix to(ring, d, g);
    for (std::size_t c = 0; c < d; ++c) to.set(c, free_coords[c], 1);
    // Pivot generator e_p is congruent to -sum of the free entries of its
    // rref row.
    for (std::size_t i = 0; i < rr.rank; ++i) {
        std::size_t p = rr.pivot_cols[i];
        for (std::size_t c = 0; c < d; ++c) to.set(c, p, ring.neg(rr.r.at(i, free_coords[c])));
    }
    FPModule freem = FPModule::free_module(ring, d);
    ModuleHom to_h(m, freem, std::move(to));
    ModuleHom from_h(freem, m, std::move(from), false);
    return VectorSpaceCoords{d, std::move(to_h), std::move(from_h)};
}

bool module_end_is_local(const FPModule& m, std::uint64_t cap) {
    if (m.ring().is_field()) return m.invariants().dimension() == 1;
    HomGroup end = hom_group(m, m);
    if (m.ngens() == 0) return false;  // End(0) is the zero ring
    std::vector<ModuleHom> elems = all_homs(end, cap);
    ModuleHom id = ModuleHom::identity(m);
    for (const auto& f : elems)
        if (!is_isomorphism(f) && !is_isomorphism(id - f)) return false;
    return true;
}

}  // namespace morphcat

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "morphcat/matrix.hpp"

namespace morphcat {

// Isomorphism invariants of a finitely presented module: the multiset of
// nonunit invariant-factor labels. Over Z a label 0 marks a free summand;
// over Z/p^k labels are p^e with p^k marking a full cyclic summand; over a
// field every label is 0 and the count is the dimension.
struct ModuleInvariants {
    Ring ring;
    std::vector<mpq_class> divisors;

    bool is_zero() const { return divisors.empty(); }
    std::size_t dimension() const { return divisors.size(); }
    bool is_uniserial() const;
    bool operator==(const ModuleInvariants& o) const {
        return ring == o.ring && divisors == o.divisors;
    }
    bool operator!=(const ModuleInvariants& o) const { return !(*this == o); }
    std::string describe() const;
};

// Finitely presented module R^ngens / colspan(relations). The Smith form of
// the relation matrix is computed once and shared by copies.
class FPModule {
public:
    FPModule(Ring ring, std::size_t ngens, Matrix relations);

    static FPModule free_module(const Ring& ring, std::size_t n);
    static FPModule zero(const Ring& ring) { return free_module(ring, 0); }
    static FPModule cyclic(const Ring& ring, const mpq_class& annihilator);

    const Ring& ring() const { return ring_; }
    std::size_t ngens() const { return ngens_; }
    const Matrix& relations() const { return relations_; }

    const SmithDecomposition& relations_smith() const { return cache_->smith; }
    // Per-generator reduction label in Smith coordinates (length ngens):
    // 0 = unconstrained, 1 = dead coordinate, d / p^e = cyclic of that order.
    const std::vector<mpq_class>& row_labels() const { return cache_->row_labels; }
    const ModuleInvariants& invariants() const { return cache_->invariants; }

    bool operator==(const FPModule& o) const {
        return ring_ == o.ring_ && ngens_ == o.ngens_ && relations_ == o.relations_;
    }
    bool operator!=(const FPModule& o) const { return !(*this == o); }

private:
    struct Cache {
        SmithDecomposition smith;
        std::vector<mpq_class> row_labels;
        ModuleInvariants invariants;
    };
    Ring ring_;
    std::size_t ngens_;
    Matrix relations_;
    std::shared_ptr<const Cache> cache_;
};

ModuleInvariants canonical_invariants(const FPModule& m);

// Relation-respecting homomorphism, stored by its action on generators
// (gen_matrix is target.ngens x source.ngens). Equality is equality of the
// canonical residue representative modulo target relations.
class ModuleHom {
public:
    ModuleHom(FPModule source, FPModule target, Matrix gen_matrix, bool validate = true);

    static ModuleHom zero(const FPModule& source, const FPModule& target);
    static ModuleHom identity(const FPModule& m);

    const FPModule& source() const { return source_; }
    const FPModule& target() const { return target_; }
    const Matrix& matrix() const { return matrix_; }
    const Matrix& canonical() const { return canonical_; }

    ModuleHom compose(const ModuleHom& inner) const;  // *this after inner
    ModuleHom operator+(const ModuleHom& o) const;
    ModuleHom operator-(const ModuleHom& o) const;
    ModuleHom scaled(const mpq_class& c) const;

    bool is_zero_map() const { return canonical_.is_zero(); }
    bool operator==(const ModuleHom& o) const;
    bool operator!=(const ModuleHom& o) const { return !(*this == o); }

private:
    FPModule source_, target_;
    Matrix matrix_;
    Matrix canonical_;
};

// Canonical residue representative of a raw generator matrix modulo the
// target's relations (rows transformed by the target's Smith U, then reduced
// by the per-row labels).
Matrix canonical_hom_matrix(const FPModule& target, const Matrix& gen_matrix);

struct KernelResult {
    FPModule module;
    ModuleHom inclusion;
};
struct CokernelResult {
    FPModule module;
    ModuleHom projection;
};

KernelResult kernel(const ModuleHom& f);
CokernelResult cokernel(const ModuleHom& f);

bool is_injective(const ModuleHom& f);
bool is_surjective(const ModuleHom& f);
bool is_isomorphism(const ModuleHom& f);
std::optional<ModuleHom> inverse_hom(const ModuleHom& f);

struct ModuleDirectSum {
    FPModule module;
    std::vector<ModuleHom> injections;
    std::vector<ModuleHom> projections;
};
ModuleDirectSum direct_sum(const std::vector<FPModule>& parts);

// x (a target-generator column) lies in im(f) + relations.
bool in_image(const ModuleHom& f, const Matrix& element);

// The image of f presented as a module, with its inclusion into f.target().
struct ImageResult {
    FPModule module;
    ModuleHom inclusion;
};
ImageResult image(const ModuleHom& f);

// Factor f through g: h with g∘h = f, when im(f) <= im(g).
std::optional<ModuleHom> factor_through(const ModuleHom& f, const ModuleHom& g);

// --- Hom groups ------------------------------------------------------------

// Hom(M, N) with a cyclic canonical decomposition: every hom is a unique
// combination sum c_i * cyclic_generators[i] with c_i ranging over [0, order_i)
// (order 0 = a free coefficient: the whole field / all of Z).
struct HomGroup {
    FPModule source, target;
    std::vector<ModuleHom> generators;
    std::vector<ModuleHom> cyclic_generators;
    std::vector<mpq_class> orders;
    mpz_class size;  // 0 = infinite
};

HomGroup hom_group(const FPModule& m, const FPModule& n);

// Odometer over coefficient ranges; returns false (without calling the
// callback) when the total count exceeds cap.
bool enumerate_combinations(const std::vector<mpz_class>& ranges, std::uint64_t cap,
                            const std::function<void(const std::vector<mpz_class>&)>& fn);

// Coefficient ranges for enumerating a cyclic decomposition over a finite
// ring; 0 entries mean an infinite range (enumeration impossible).
std::vector<mpz_class> coefficient_ranges(const Ring& ring, const std::vector<mpq_class>& orders);

// All elements of Hom(M, N); throws TooLarge beyond cap.
std::vector<ModuleHom> all_homs(const HomGroup& hg, std::uint64_t cap);

bool module_end_is_local(const FPModule& m, std::uint64_t cap = (1u << 20));

// Explicit identification of a module over a field with a coordinate space:
// to_coords ∘ from_coords = id exactly, from_coords ∘ to_coords = id as homs.
struct VectorSpaceCoords {
    std::size_t dim;
    ModuleHom to_coords;    // M -> free^dim
    ModuleHom from_coords;  // free^dim -> M
};
VectorSpaceCoords vector_space_coords(const FPModule& m);

// --- Span decomposition (shared with the morphism layer) -------------------

// Cyclic decomposition of the span of `vectors` inside the ambient group
// prod_i R/(labels_i): returns coefficient combos (columns) with their orders.
struct SpanDecomposition {
    std::vector<std::vector<mpq_class>> combinations;  // one coefficient vector per cyclic gen
    std::vector<mpq_class> orders;
    mpz_class size;  // 0 = infinite
};
SpanDecomposition decompose_span(const Ring& ring, const std::vector<std::vector<mpq_class>>& vectors,
                                 const std::vector<mpq_class>& labels);

}  // namespace morphcat

#pragma once

#include "morphcat/algebra.hpp"
#include "morphcat/morph.hpp"

namespace morphcat {

// E_M = End(M) in the morphism category, realized as an exact subalgebra of
// End(M0) x End(M1). Structure theory (radical, blocks) is available over
// field base rings only; finite rings go through the enumeration tier below.
class EndoAlgebra {
public:
    explicit EndoAlgebra(MorphObject m);

    const MorphObject& object() const { return object_; }
    const Algebra& algebra() const { return *algebra_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<MorphMap>& basis() const { return basis_; }

    Matrix coords_of(const MorphMap& u) const;
    MorphMap element(const Matrix& coords) const;
    MorphMap identity_map() const { return MorphMap::identity(object_); }

    // The projected component algebras E_i = pi_i(E_M), with their bases.
    const Algebra& e0_algebra() const { return *e0_; }
    const Algebra& e1_algebra() const { return *e1_; }
    const std::vector<ModuleHom>& e0_basis() const { return e0_basis_; }
    const std::vector<ModuleHom>& e1_basis() const { return e1_basis_; }
    std::size_t e0_dim() const { return e0_basis_.size(); }
    std::size_t e1_dim() const { return e1_basis_.size(); }

    bool component_invertible_in_e0(const ModuleHom& u0) const;
    bool component_invertible_in_e1(const ModuleHom& u1) const;

private:
    MorphObject object_;
    std::vector<MorphMap> basis_;
    std::vector<Matrix> basis_vectors_;  // ambient pair-canonical coordinates
    std::shared_ptr<Algebra> algebra_;
    std::vector<ModuleHom> e0_basis_, e1_basis_;
    std::vector<Matrix> e0_vectors_, e1_vectors_;
    std::shared_ptr<Algebra> e0_, e1_;
};

EndoAlgebra endo_algebra(const MorphObject& m);

std::vector<MorphMap> radical(const EndoAlgebra& a);
bool radical_membership(const EndoAlgebra& a, const MorphMap& u);

struct EndoClassification {
    std::size_t dim = 0;
    std::size_t radical_dim = 0;
    std::size_t semisimple_dim = 0;
    std::size_t num_blocks = 0;
    std::vector<bool> block_division_flags;
    std::optional<std::size_t> type_n;
    bool is_local = false;
    bool is_semilocal = true;
    bool is_finite_type = false;
    std::size_t e0_dim = 0, e1_dim = 0;
};
EndoClassification classify(const EndoAlgebra& a, std::uint64_t seed = 0);

// Bases of the maximal two-sided ideals of E_M (field tier), one per block.
std::vector<std::vector<MorphMap>> endo_maximal_ideals(const EndoAlgebra& a,
                                                       std::uint64_t seed = 0);

// End(M_i) of a plain module as an algebra (field base).
Algebra module_end_algebra(const FPModule& m);
AlgebraClassification classify_module_end(const FPModule& m, std::uint64_t seed = 0);

// --- Maximal-ideal membership predicates (sections 6 and 7) ----------------

enum class IdealTag { IMd, IMc, I0, I1, K0, K1 };
const char* tag_name(IdealTag t);

// Component property test defining the predicate set.
bool predicate_member(IdealTag tag, const MorphMap& u);

struct PredicateReport {
    IdealTag tag;
    bool proper_ideal = false;
    bool maximal = false;
    bool completely_prime = false;
    mpz_class members = 0;
    mpz_class checked = 0;
};

struct IdealPredicateResult {
    std::vector<PredicateReport> reports;
    bool used_enumeration = false;
};

// Evaluates the applicable predicates: I_Md/I_Mc need End(M0), End(M1) local,
// the injectivity/surjectivity four need nonzero uniserial components. Throws
// PreconditionViolated when no tag applies.
IdealPredicateResult ideal_predicates(const MorphObject& m, std::uint64_t enum_cap = (1u << 20));

// --- Locality criteria ------------------------------------------------------

struct LocalityReport {
    int thm53_case = 3;
    bool lhs_local = false;
    bool rhs_holds = false;
    bool agree = false;
    bool lemma61_applicable = false;
    bool lemma61_cond1 = false, lemma61_cond2 = false, lemma61_agree = true;
    bool closing_applicable = false;
    bool closing_rhs = false, closing_agree = true;
    mpz_class endo_count = 0;
};

// Evaluates both sides of the locality criteria by exhaustive enumeration
// (finite base rings and finite fields).
LocalityReport locality_criteria_check(const MorphObject& m, std::uint64_t enum_cap = (1u << 20));

// All elements of End(M) (finite case), and unit search within the list.
std::vector<MorphMap> all_endos(const MorphObject& m, std::uint64_t cap = (1u << 20));
bool unit_in_list(const std::vector<MorphMap>& endos, const MorphMap& u);

// Finite-ring tier: End(M) is of finite type iff End(M)/J is commutative.
bool module_end_finite_type(const FPModule& m, std::uint64_t cap = (1u << 20));

}  // namespace morphcat

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "morphcat/module.hpp"

namespace morphcat {

// An object mu: M0 -> M1 of the morphism category.
class MorphObject {
public:
    MorphObject(FPModule m0, FPModule m1, ModuleHom mu);
    MorphObject(const FPModule& m0, const FPModule& m1, const Matrix& mu_matrix);

    static MorphObject zero_object(const Ring& ring);
    // Free-module object from a plain matrix (rows = dim M1, cols = dim M0).
    static MorphObject from_matrix(const Matrix& a);

    const FPModule& m0() const { return m0_; }
    const FPModule& m1() const { return m1_; }
    const ModuleHom& mu() const { return mu_; }
    const Ring& ring() const { return m0_.ring(); }

    bool operator==(const MorphObject& o) const {
        return m0_ == o.m0_ && m1_ == o.m1_ && mu_ == o.mu_;
    }
    bool operator!=(const MorphObject& o) const { return !(*this == o); }

private:
    FPModule m0_, m1_;
    ModuleHom mu_;
};

// A commuting square (u0, u1) between two objects.
class MorphMap {
public:
    MorphMap(MorphObject source, MorphObject target, ModuleHom u0, ModuleHom u1,
             bool validate = true);

    static MorphMap identity(const MorphObject& m);
    static MorphMap zero(const MorphObject& source, const MorphObject& target);

    const MorphObject& source() const { return source_; }
    const MorphObject& target() const { return target_; }
    const ModuleHom& u0() const { return u0_; }
    const ModuleHom& u1() const { return u1_; }

    MorphMap compose(const MorphMap& inner) const;
    MorphMap operator+(const MorphMap& o) const;
    MorphMap operator-(const MorphMap& o) const;
    MorphMap scaled(const mpq_class& c) const;

    bool is_zero_map() const { return u0_.is_zero_map() && u1_.is_zero_map(); }
    bool operator==(const MorphMap& o) const;
    bool operator!=(const MorphMap& o) const { return !(*this == o); }

private:
    MorphObject source_, target_;
    ModuleHom u0_, u1_;
};

bool is_morph_iso(const MorphMap& u);
std::optional<MorphMap> morph_inverse(const MorphMap& u);

// Hom_Morph(M, N) with the same cyclic decomposition contract as HomGroup.
struct MorphHomSpace {
    MorphObject source, target;
    std::vector<MorphMap> generators;
    std::vector<MorphMap> cyclic_generators;
    std::vector<mpq_class> orders;
    mpz_class size;  // 0 = infinite
};

MorphHomSpace hom_space(const MorphObject& m, const MorphObject& n);
std::vector<MorphMap> all_morph_maps(const MorphHomSpace& hs, std::uint64_t cap);

struct MorphDirectSum {
    MorphObject object;
    std::vector<MorphMap> injections;
    std::vector<MorphMap> projections;
};
MorphDirectSum morph_direct_sum(const std::vector<MorphObject>& parts);

// The four canonical functors, on objects and on maps.
FPModule functor_D(const MorphObject& m);
FPModule functor_C(const MorphObject& m);
KernelResult functor_Ker(const MorphObject& m);
CokernelResult functor_Coker(const MorphObject& m);

ModuleHom functor_D_map(const MorphMap& u);
ModuleHom functor_C_map(const MorphMap& u);
ModuleHom functor_Ker_map(const MorphMap& u);
ModuleHom functor_Coker_map(const MorphMap& u);

// 0 -> ker(mu) -> M0 -> M0 (+) M1 -> M0 (+) coker(mu) -> 0 with the maps
// (inclusion), (0, mu)ᵀ, and (identity (+) projection) minus the shear
// through mu; certifies exactness at every position.
struct SequenceReport {
    bool exact_at_kernel = false;
    bool exact_at_domain = false;
    bool exact_at_middle = false;
    bool exact_at_end = false;
    std::vector<std::size_t> dims;  // field rings: the four dimensions
    bool alternating_sum_zero = true;
    std::string failure;

    bool ok() const {
        return exact_at_kernel && exact_at_domain && exact_at_middle && exact_at_end &&
               alternating_sum_zero;
    }
};
SequenceReport verify_canonical_sequence(const MorphObject& m);

struct DecisionPolicy {
    std::uint64_t max_exhaustive = 1u << 20;
    unsigned trials = 512;
    long coeff_bound = 10;
    std::uint64_t seed = 0;
};

enum class IsoVerdict { Isomorphic, NotIsomorphic, Undecided };

struct IsoResult {
    IsoVerdict verdict;
    std::optional<MorphMap> witness;
    std::string certificate;
};

IsoResult iso_test(const MorphObject& m, const MorphObject& n, const DecisionPolicy& policy = {});

// Canonical rank form over a field, with explicit mutually inverse maps.
struct RankForm {
    std::size_t n, m, r;
    MorphObject canonical;
    MorphMap to_canonical;    // M -> canonical
    MorphMap from_canonical;  // canonical -> M
};
RankForm rank_form(const MorphObject& m);

}  // namespace morphcat

#pragma once

#include <array>
#include <map>

#include "morphcat/morph.hpp"

namespace morphcat {

// Decomposition of a field object into copies of (k -> 0), (0 -> k) and the
// identity, with an explicit isomorphism onto the reassembled direct sum.
struct FieldDecomposition {
    std::size_t a = 0, b = 0, c = 0;
    MorphObject reassembled;
    MorphMap to_reassembled;
};
FieldDecomposition decompose_field(const MorphObject& m);

std::pair<mpz_class, mpz_class> psi(const std::array<mpz_class, 3>& triple);

enum class ClassTag { Domain, Codomain, Mono0, Mono1, Epi0, Epi1 };
const char* class_tag_name(ClassTag t);                 // "d", "c", "0m", "1m", "0e", "1e"
std::optional<ClassTag> class_tag_from_name(const std::string& s);

enum class ClassVerdict { Equal, NotEqual, Undecided };

struct ClassReport {
    ClassTag tag;
    ClassVerdict verdict = ClassVerdict::Undecided;
    std::optional<MorphMap> forward;   // M -> N with the designated property
    std::optional<MorphMap> backward;  // N -> M with the designated property
};

// Two-directional witness search for the class relation named by the tag.
ClassReport class_equal(const MorphObject& m, const MorphObject& n, ClassTag tag,
                        const DecisionPolicy& policy = {});

struct MatchResult {
    IsoVerdict verdict = IsoVerdict::Undecided;
    std::map<ClassTag, std::vector<std::size_t>> permutations;
    std::map<ClassTag, std::vector<std::vector<ClassVerdict>>> class_matrices;
    std::string certificate;
};

// Per-tag bipartite perfect matching of class-equality; "isomorphic" iff the
// lists have equal length and every tag admits a perfect matching.
MatchResult match_decompositions(const std::vector<MorphObject>& ms,
                                 const std::vector<MorphObject>& ns,
                                 const std::vector<ClassTag>& tags,
                                 const DecisionPolicy& policy = {});

struct DiagEquivResult {
    bool equivalent = false;
    std::vector<mpq_class> divisors_a, divisors_b;
    std::optional<Matrix> p, q;  // when equivalent: diag(bs) = q^{-1} diag(as) p
};

// Equivalence of diagonal matrices over Z or Z/p^k via elementary divisors,
// with an explicit transform certificate.
DiagEquivResult diag_equiv(const std::vector<mpq_class>& as, const std::vector<mpq_class>& bs,
                           const Ring& ring);

}  // namespace morphcat

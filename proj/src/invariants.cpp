#include "morphcat/invariants.hpp"

#include <random>

namespace morphcat {

FieldDecomposition decompose_field(const MorphObject& m) {
    if (!m.ring().is_field()) fail("NonFieldRing", "decompose_field requires a field");
    const Ring& ring = m.ring();
    RankForm rf = rank_form(m);
    std::size_t a = rf.n - rf.r, b = rf.m - rf.r, c = rf.r;

    if (a + b + c == 0) {
        MorphObject z = MorphObject::zero_object(ring);
        return FieldDecomposition{0, 0, 0, z, MorphMap::identity(z)};
    }

    std::vector<MorphObject> parts;
    for (std::size_t i = 0; i < a; ++i) parts.push_back(MorphObject::from_matrix(Matrix(ring, 0, 1)));
    for (std::size_t i = 0; i < b; ++i) parts.push_back(MorphObject::from_matrix(Matrix(ring, 1, 0)));
    for (std::size_t i = 0; i < c; ++i) parts.push_back(MorphObject::from_matrix(Matrix::identity(ring, 1)));
    MorphObject sum = morph_direct_sum(parts).object;

    // Permutation from the canonical rank form onto the direct-sum layout:
    // domain coordinates j < r land on the identity summands, the rest on the
    // (k -> 0) block; codomain coordinates j < r follow the identities after
    // the (0 -> k) block.
    Matrix p0(ring, a + c, rf.n);
    for (std::size_t j = 0; j < c; ++j) p0.set(a + j, j, 1);
    for (std::size_t t = 0; t < a; ++t) p0.set(t, c + t, 1);
    Matrix p1(ring, b + c, rf.m);
    for (std::size_t j = 0; j < c; ++j) p1.set(b + j, j, 1);
    for (std::size_t s = 0; s < b; ++s) p1.set(s, c + s, 1);

    MorphMap perm(rf.canonical, sum, ModuleHom(rf.canonical.m0(), sum.m0(), p0, false),
                  ModuleHom(rf.canonical.m1(), sum.m1(), p1, false));
    MorphMap witness = perm.compose(rf.to_canonical);
    return FieldDecomposition{a, b, c, std::move(sum), std::move(witness)};
}

std::pair<mpz_class, mpz_class> psi(const std::array<mpz_class, 3>& t) {
    if (t[0] < 0 || t[1] < 0 || t[2] < 0) fail("InvalidInput", "psi needs nonnegative entries");
    return {t[0] + t[2], t[1] + t[2]};
}

const char* class_tag_name(ClassTag t) {
    switch (t) {
        case ClassTag::Domain: return "d";
        case ClassTag::Codomain: return "c";
        case ClassTag::Mono0: return "0m";
        case ClassTag::Mono1: return "1m";
        case ClassTag::Epi0: return "0e";
        case ClassTag::Epi1: return "1e";
    }
    return "?";
}

std::optional<ClassTag> class_tag_from_name(const std::string& s) {
    if (s == "d") return ClassTag::Domain;
    if (s == "c") return ClassTag::Codomain;
    if (s == "0m") return ClassTag::Mono0;
    if (s == "1m") return ClassTag::Mono1;
    if (s == "0e") return ClassTag::Epi0;
    if (s == "1e") return ClassTag::Epi1;
    return std::nullopt;
}

namespace {

bool tag_property(ClassTag tag, const MorphMap& u) {
    switch (tag) {
        case ClassTag::Domain: return is_isomorphism(u.u0());
        case ClassTag::Codomain: return is_isomorphism(u.u1());
        case ClassTag::Mono0: return is_injective(u.u0());
        case ClassTag::Mono1: return is_injective(u.u1());
        case ClassTag::Epi0: return is_surjective(u.u0());
        case ClassTag::Epi1: return is_surjective(u.u1());
    }
    return false;
}

void check_preconditions(ClassTag tag, const MorphObject& m, const MorphObject& n,
                         std::uint64_t cap) {
    auto local = [&](const FPModule& mod, const char* name) {
        bool ok = mod.ring().is_field() ? mod.invariants().dimension() == 1
                                        : (!mod.invariants().is_zero() && module_end_is_local(mod, cap));
        if (!ok) fail("PreconditionViolated", std::string(name) + " does not have a local endomorphism ring");
    };
    auto uniserial = [&](const FPModule& mod, const char* name) {
        if (mod.invariants().is_zero() || !mod.invariants().is_uniserial())
            fail("PreconditionViolated", std::string(name) + " not nonzero uniserial");
    };
    switch (tag) {
        case ClassTag::Domain:
            local(m.m0(), "M0");
            local(n.m0(), "N0");
            break;
        case ClassTag::Codomain:
            local(m.m1(), "M1");
            local(n.m1(), "N1");
            break;
        default:
            uniserial(m.m0(), "M0");
            uniserial(m.m1(), "M1");
            uniserial(n.m0(), "N0");
            uniserial(n.m1(), "N1");
            break;
    }
}

struct WitnessSearch {
    std::optional<MorphMap> witness;
    bool exhausted = false;
};

WitnessSearch search_witness(const MorphObject& from, const MorphObject& to, ClassTag tag,
                             const DecisionPolicy& policy) {
    MorphHomSpace hs = hom_space(from, to);
    WitnessSearch out;
    if (hs.size != 0 && hs.size <= policy.max_exhaustive) {
        out.exhausted = true;
        for (auto& u : all_morph_maps(hs, policy.max_exhaustive)) {
            if (tag_property(tag, u)) {
                out.witness = std::move(u);
                return out;
            }
        }
        return out;
    }
    std::mt19937_64 rng(policy.seed);
    const Ring& ring = from.ring();
    std::vector<mpz_class> ranges = coefficient_ranges(ring, hs.orders);
    for (unsigned trial = 0; trial < policy.trials; ++trial) {
        Matrix h0(ring, to.m0().ngens(), from.m0().ngens());
        Matrix h1(ring, to.m1().ngens(), from.m1().ngens());
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
        MorphMap u(from, to, ModuleHom(from.m0(), to.m0(), std::move(h0), false),
                   ModuleHom(from.m1(), to.m1(), std::move(h1), false), false);
        if (tag_property(tag, u)) {
            out.witness = std::move(u);
            return out;
        }
    }
    return out;
}

}  // namespace

ClassReport class_equal(const MorphObject& m, const MorphObject& n, ClassTag tag,
                        const DecisionPolicy& policy) {
    if (m.ring() != n.ring()) fail("RingMismatch", "class_equal over different rings");
    check_preconditions(tag, m, n, policy.max_exhaustive);

    ClassReport rep;
    rep.tag = tag;
    WitnessSearch fwd = search_witness(m, n, tag, policy);
    WitnessSearch bwd = search_witness(n, m, tag, policy);
    if (fwd.witness && bwd.witness) {
        rep.verdict = ClassVerdict::Equal;
        rep.forward = std::move(fwd.witness);
        rep.backward = std::move(bwd.witness);
    } else if ((!fwd.witness && fwd.exhausted) || (!bwd.witness && bwd.exhausted)) {
        rep.verdict = ClassVerdict::NotEqual;
    } else {
        rep.verdict = ClassVerdict::Undecided;
    }
    return rep;
}

namespace {

// Kuhn's augmenting paths restricted to the given edge test.
bool has_perfect_matching(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& edge,
                          std::vector<long>* matched_cols = nullptr) {
    std::vector<long> match_row(n, -1), match_col(n, -1);
    std::function<bool(std::size_t, std::vector<bool>&)> try_aug = [&](std::size_t i,
                                                                       std::vector<bool>& used) {
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j] || !edge(i, j)) continue;
            used[j] = true;
            if (match_col[j] < 0 || try_aug(match_col[j], used)) {
                match_row[i] = static_cast<long>(j);
                match_col[j] = static_cast<long>(i);
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<bool> used(n, false);
        if (!try_aug(i, used)) return false;
    }
    if (matched_cols) *matched_cols = match_row;
    return true;
}

// Lexicographically least perfect matching: fix rows in order, trying the
// smallest column that keeps the rest matchable.
std::optional<std::vector<std::size_t>> lexicographic_matching(
    std::size_t n, const std::function<bool(std::size_t, std::size_t)>& edge) {
    std::vector<std::size_t> fixed;
    std::vector<bool> col_used(n, false);
    auto feasible = [&](std::size_t k) {
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < n; ++j)
            if (!col_used[j]) cols.push_back(j);
        return has_perfect_matching(n - k, [&](std::size_t i, std::size_t j) {
            return edge(k + i, cols[j]);
        });
    };
    for (std::size_t i = 0; i < n; ++i) {
        bool placed = false;
        for (std::size_t j = 0; j < n && !placed; ++j) {
            if (col_used[j] || !edge(i, j)) continue;
            col_used[j] = true;
            if (feasible(i + 1)) {
                fixed.push_back(j);
                placed = true;
            } else {
                col_used[j] = false;
            }
        }
        if (!placed) return std::nullopt;
    }
    return fixed;
}

}  // namespace

MatchResult match_decompositions(const std::vector<MorphObject>& ms,
                                 const std::vector<MorphObject>& ns,
                                 const std::vector<ClassTag>& tags, const DecisionPolicy& policy) {
    MatchResult out;
    if (ms.size() != ns.size()) {
        out.verdict = IsoVerdict::NotIsomorphic;
        out.certificate = "list lengths differ";
        return out;
    }
    std::size_t n = ms.size();
    bool any_undecided_matters = false;

    for (ClassTag tag : tags) {
        std::vector<std::vector<ClassVerdict>> matrix(n, std::vector<ClassVerdict>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                matrix[i][j] = class_equal(ms[i], ns[j], tag, policy).verdict;
        out.class_matrices[tag] = matrix;

        auto equal_edge = [&matrix](std::size_t i, std::size_t j) {
            return matrix[i][j] == ClassVerdict::Equal;
        };
        auto possible_edge = [&matrix](std::size_t i, std::size_t j) {
            return matrix[i][j] != ClassVerdict::NotEqual;
        };
        auto perm = lexicographic_matching(n, equal_edge);
        if (perm) {
            out.permutations[tag] = *perm;
            continue;
        }
        if (has_perfect_matching(n, possible_edge)) {
            any_undecided_matters = true;  // undecided entries could still complete a matching
        } else {
            out.verdict = IsoVerdict::NotIsomorphic;
            out.certificate = std::string("no perfect matching for the ") + class_tag_name(tag) +
                              " classes";
            return out;
        }
    }
    if (any_undecided_matters) {
        out.verdict = IsoVerdict::Undecided;
        out.certificate = "matching blocked by undecided class relations";
        return out;
    }
    out.verdict = IsoVerdict::Isomorphic;
    return out;
}

DiagEquivResult diag_equiv(const std::vector<mpq_class>& as, const std::vector<mpq_class>& bs,
                           const Ring& ring) {
    if (ring.kind() != RingKind::Residue && ring.kind() != RingKind::Integer)
        fail("UnsupportedRing", "diag_equiv is defined over Z and Z/p^k");
    if (as.size() != bs.size()) fail("ShapeMismatch", "diagonal lists of different length");
    std::size_t n = as.size();
    Matrix a(ring, n, n), b(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a.set(i, i, as[i]);
        b.set(i, i, bs[i]);
    }
    SmithDecomposition sa = smith_normal_form(a);
    SmithDecomposition sb = smith_normal_form(b);

    DiagEquivResult out;
    out.divisors_a = sa.elementary_divisors;
    out.divisors_b = sb.elementary_divisors;
    out.equivalent = sa.elementary_divisors == sb.elementary_divisors;
    if (out.equivalent) {
        // From U_a A V_a = D = U_b B V_b: B = (U_b^{-1} U_a) A (V_a V_b^{-1}),
        // so P = V_a V_b^{-1} and Q = U_a^{-1} U_b.
        auto ua_inv = inverse(sa.u);
        auto vb_inv = inverse(sb.v);
        if (!ua_inv || !vb_inv) fail("InvalidMatrix", "Smith transforms not invertible");
        out.p = sa.v * *vb_inv;
        out.q = *ua_inv * sb.u;
        auto q_inv = inverse(*out.q);
        if (!q_inv || !(*q_inv * a * *out.p == b))
            fail("InvalidMatrix", "diag_equiv certificate failed verification");
    }
    return out;
}

}  // namespace morphcat

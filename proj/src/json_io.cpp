#include "morphcat/json_io.hpp"

namespace morphcat {

json scalar_to_json(const Ring& ring, const mpq_class& x) {
    mpq_class v = ring.normalize(x);
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

mpq_class scalar_from_json(const Ring& ring, const json& j) {
    if (j.is_number_integer()) return ring.normalize(mpq_class(static_cast<long>(j.get<long long>())));
    if (j.is_string()) {
        try {
            mpq_class v(j.get<std::string>());
            v.canonicalize();
            return ring.normalize(v);
        } catch (const std::invalid_argument&) {
            fail("ParseError", "bad scalar literal: " + j.get<std::string>());
        }
    }
    fail("ParseError", "scalar must be an integer or a string");
}

json ring_to_json(const Ring& ring) {
    json j;
    switch (ring.kind()) {
        case RingKind::PrimeField:
            j["kind"] = "prime-field";
            j["p"] = ring.modulus().get_str();
            break;
        case RingKind::Rational:
            j["kind"] = "rational";
            break;
        case RingKind::Integer:
            j["kind"] = "integer";
            break;
        case RingKind::Residue:
            j["kind"] = "residue";
            j["n"] = ring.modulus().get_str();
            break;
    }
    return j;
}

namespace {

mpz_class mpz_from_json(const json& j, const char* what) {
    if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<long long>()));
    if (j.is_string()) {
        try {
            return mpz_class(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            fail("ParseError", std::string("bad integer literal for ") + what);
        }
    }
    fail("ParseError", std::string("expected integer for ") + what);
}

}  // namespace

Ring ring_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        fail("ParseError", "ring needs a \"kind\" string");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "prime-field") {
        if (!j.contains("p")) fail("ParseError", "prime-field ring needs \"p\"");
        return Ring::prime_field(mpz_from_json(j["p"], "p"));
    }
    if (kind == "rational") return Ring::rational();
    if (kind == "integer") return Ring::integer();
    if (kind == "residue") {
        if (!j.contains("n")) fail("ParseError", "residue ring needs \"n\"");
        return Ring::residue(mpz_from_json(j["n"], "n"));
    }
    fail("ParseError", "unknown ring kind: " + kind);
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m.ring(), m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Ring& ring, const json& j) {
    if (!j.is_array()) fail("ParseError", "matrix must be an array of rows");
    std::size_t rows = j.size();
    std::size_t cols = rows == 0 ? 0 : j[0].size();
    Matrix m(ring, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) fail("ParseError", "ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m.set(i, c, scalar_from_json(ring, j[i][c]));
    }
    return m;
}

json module_to_json(const FPModule& m) {
    json j;
    j["ngens"] = m.ngens();
    j["relations"] = matrix_to_json(m.relations());
    return j;
}

FPModule module_from_json(const Ring& ring, const json& j) {
    if (!j.is_object() || !j.contains("ngens")) fail("ParseError", "module needs \"ngens\"");
    std::size_t g = j["ngens"].get<std::size_t>();
    Matrix rel = j.contains("relations") ? matrix_from_json(ring, j["relations"]) : Matrix(ring, g, 0);
    if (rel.rows() == 0 && g > 0 && rel.cols() == 0) rel = Matrix(ring, g, 0);
    if (rel.rows() != g) fail("ParseError", "relations must have ngens rows");
    return FPModule(ring, g, rel);
}

json hom_to_json(const ModuleHom& f) {
    json j;
    j["source"] = module_to_json(f.source());
    j["target"] = module_to_json(f.target());
    j["matrix"] = matrix_to_json(f.matrix());
    return j;
}

ModuleHom hom_from_json(const Ring& ring, const json& j) {
    if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("matrix"))
        fail("ParseError", "hom needs source, target, matrix");
    FPModule src = module_from_json(ring, j["source"]);
    FPModule tgt = module_from_json(ring, j["target"]);
    return ModuleHom(src, tgt, matrix_from_json(ring, j["matrix"]));
}

json morph_object_to_json(const MorphObject& m) {
    json j;
    j["m0"] = module_to_json(m.m0());
    j["m1"] = module_to_json(m.m1());
    j["mu"] = matrix_to_json(m.mu().matrix());
    return j;
}

MorphObject morph_object_from_json(const Ring& ring, const json& j) {
    if (!j.is_object() || !j.contains("m0") || !j.contains("m1") || !j.contains("mu"))
        fail("ParseError", "object needs m0, m1, mu");
    FPModule m0 = module_from_json(ring, j["m0"]);
    FPModule m1 = module_from_json(ring, j["m1"]);
    return MorphObject(m0, m1, matrix_from_json(ring, j["mu"]));
}

json morph_map_to_json(const MorphMap& u) {
    json j;
    j["u0"] = matrix_to_json(u.u0().matrix());
    j["u1"] = matrix_to_json(u.u1().matrix());
    return j;
}

json invariants_to_json(const ModuleInvariants& inv) {
    json divisors = json::array();
    for (const auto& d : inv.divisors) divisors.push_back(scalar_to_json(Ring::integer(), d));
    json j;
    j["divisors"] = std::move(divisors);
    j["is_zero"] = inv.is_zero();
    j["is_uniserial"] = inv.is_uniserial();
    if (inv.ring.is_field()) j["dimension"] = inv.dimension();
    return j;
}

json iso_result_to_json(const IsoResult& r) {
    json j;
    switch (r.verdict) {
        case IsoVerdict::Isomorphic: j["verdict"] = "isomorphic"; break;
        case IsoVerdict::NotIsomorphic: j["verdict"] = "not"; break;
        case IsoVerdict::Undecided: j["verdict"] = "undecided"; break;
    }
    j["witness"] = r.witness ? morph_map_to_json(*r.witness) : json(nullptr);
    j["certificate"] = r.certificate;
    return j;
}

json tmodule_to_json(const TModuleRep& rep) {
    json j;
    ImageResult i0 = image(rep.e11_action);
    ImageResult i1 = image(rep.e22_action);
    j["m0_dim"] = i0.module.invariants().dimension();
    j["m1_dim"] = i1.module.invariants().dimension();
    j["e12_action"] = matrix_to_json(rep.e12_action.matrix());
    return j;
}

json ideal_check_to_json(const IdealCheckReport& rep) {
    json j;
    j["squares_to_zero"] = rep.squares_to_zero;
    j["quotient_is_product"] = rep.quotient_is_product;
    j["no_splitting"] = rep.no_splitting;
    j["elements_checked"] = rep.elements_checked.get_str();
    j["pass"] = rep.ok();
    j["counterexample"] = json(nullptr);
    return j;
}

json sequence_report_to_json(const SequenceReport& rep) {
    json j;
    j["exact_at_kernel"] = rep.exact_at_kernel;
    j["exact_at_domain"] = rep.exact_at_domain;
    j["exact_at_middle"] = rep.exact_at_middle;
    j["exact_at_end"] = rep.exact_at_end;
    j["pass"] = rep.ok();
    if (!rep.dims.empty()) {
        j["dims"] = rep.dims;
        j["alternating_sum_zero"] = rep.alternating_sum_zero;
    }
    if (!rep.failure.empty()) j["failure"] = rep.failure;
    return j;
}

json endo_classification_to_json(const EndoClassification& cls) {
    json j;
    j["dim"] = cls.dim;
    j["radical_dim"] = cls.radical_dim;
    j["semisimple_dim"] = cls.semisimple_dim;
    j["num_blocks"] = cls.num_blocks;
    j["block_division_flags"] = cls.block_division_flags;
    j["type"] = cls.type_n ? json(*cls.type_n) : json(nullptr);
    j["is_local"] = cls.is_local;
    j["is_semilocal"] = cls.is_semilocal;
    j["is_finite_type"] = cls.is_finite_type;
    j["e0_dim"] = cls.e0_dim;
    j["e1_dim"] = cls.e1_dim;
    return j;
}

json predicate_reports_to_json(const IdealPredicateResult& res) {
    json arr = json::array();
    for (const auto& rep : res.reports) {
        json j;
        j["tag"] = tag_name(rep.tag);
        j["proper_ideal"] = rep.proper_ideal;
        j["maximal"] = rep.maximal;
        j["completely_prime"] = rep.completely_prime;
        j["members"] = rep.members.get_str();
        arr.push_back(std::move(j));
    }
    return arr;
}

json locality_report_to_json(const LocalityReport& rep) {
    json j;
    j["thm_case"] = rep.thm53_case;
    j["is_local"] = rep.lhs_local;
    j["criterion_holds"] = rep.rhs_holds;
    j["agree"] = rep.agree;
    j["pairwise_local_applicable"] = rep.lemma61_applicable;
    if (rep.lemma61_applicable) {
        j["cond_domain_forces_codomain"] = rep.lemma61_cond1;
        j["cond_codomain_forces_domain"] = rep.lemma61_cond2;
        j["pairwise_agree"] = rep.lemma61_agree;
    }
    j["finite_type_applicable"] = rep.closing_applicable;
    if (rep.closing_applicable) {
        j["finite_type_criterion"] = rep.closing_rhs;
        j["finite_type_agree"] = rep.closing_agree;
    }
    j["endomorphisms"] = rep.endo_count.get_str();
    return j;
}

json class_report_to_json(const ClassReport& rep) {
    json j;
    j["tag"] = class_tag_name(rep.tag);
    switch (rep.verdict) {
        case ClassVerdict::Equal: j["verdict"] = "equal"; break;
        case ClassVerdict::NotEqual: j["verdict"] = "not-equal"; break;
        case ClassVerdict::Undecided: j["verdict"] = "undecided"; break;
    }
    j["forward"] = rep.forward ? morph_map_to_json(*rep.forward) : json(nullptr);
    j["backward"] = rep.backward ? morph_map_to_json(*rep.backward) : json(nullptr);
    return j;
}

json match_result_to_json(const MatchResult& r) {
    json j;
    switch (r.verdict) {
        case IsoVerdict::Isomorphic: j["verdict"] = "isomorphic"; break;
        case IsoVerdict::NotIsomorphic: j["verdict"] = "not"; break;
        case IsoVerdict::Undecided: j["verdict"] = "undecided"; break;
    }
    json perms;
    for (const auto& [tag, perm] : r.permutations) perms[class_tag_name(tag)] = perm;
    j["permutations"] = std::move(perms);
    json matrices;
    for (const auto& [tag, matrix] : r.class_matrices) {
        json rows = json::array();
        for (const auto& row : matrix) {
            json jr = json::array();
            for (auto v : row)
                jr.push_back(v == ClassVerdict::Equal ? "equal"
                                                      : (v == ClassVerdict::NotEqual ? "not-equal"
                                                                                     : "undecided"));
            rows.push_back(std::move(jr));
        }
        matrices[class_tag_name(tag)] = std::move(rows);
    }
    j["class_matrix"] = std::move(matrices);
    if (!r.certificate.empty()) j["certificate"] = r.certificate;
    return j;
}

json diag_equiv_to_json(const DiagEquivResult& r) {
    json j;
    j["equivalent"] = r.equivalent;
    json da = json::array(), db = json::array();
    for (const auto& d : r.divisors_a) da.push_back(scalar_to_json(Ring::integer(), d));
    for (const auto& d : r.divisors_b) db.push_back(scalar_to_json(Ring::integer(), d));
    j["divisors_a"] = std::move(da);
    j["divisors_b"] = std::move(db);
    if (r.p && r.q) {
        j["p"] = matrix_to_json(*r.p);
        j["q"] = matrix_to_json(*r.q);
    }
    return j;
}

std::string corpus_to_jsonl(const Corpus& corpus) {
    std::string out;
    for (const auto& obj : corpus.objects) {
        json line = morph_object_to_json(obj);
        line["ring"] = ring_to_json(corpus.spec.ring);
        out += canonical_dump(line);
        out += "\n";
    }
    return out;
}

std::string canonical_dump(const json& j) { return j.dump(); }

}  // namespace morphcat

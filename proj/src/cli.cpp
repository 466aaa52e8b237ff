#include "morphcat/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace morphcat {

namespace {

DecisionPolicy policy_from(std::uint64_t seed, unsigned trials) {
    DecisionPolicy p;
    p.seed = seed;
    p.trials = trials;
    return p;
}

json cmd_decompose(const Ring& ring, const json& input) {
    MorphObject m = morph_object_from_json(ring, input.at("object"));
    FieldDecomposition d = decompose_field(m);
    auto [x, y] = psi({mpz_class(static_cast<long>(d.a)), mpz_class(static_cast<long>(d.b)),
                       mpz_class(static_cast<long>(d.c))});
    json j;
    j["a"] = d.a;
    j["b"] = d.b;
    j["c"] = d.c;
    j["psi"] = json::array({x.get_str(), y.get_str()});
    j["witness"] = morph_map_to_json(d.to_reassembled);
    return j;
}

json cmd_endo(const Ring& ring, const json& input, std::uint64_t seed) {
    MorphObject m = morph_object_from_json(ring, input.at("object"));
    EndoAlgebra ea(m);
    EndoClassification cls = classify(ea, seed);
    json j = endo_classification_to_json(cls);
    json tags = json::array();
    try {
        IdealPredicateResult preds = ideal_predicates(m);
        j["predicates"] = predicate_reports_to_json(preds);
        for (const auto& rep : preds.reports)
            if (rep.maximal) tags.push_back(tag_name(rep.tag));
    } catch (const Error& e) {
        if (e.code() != "PreconditionViolated" && e.code() != "TooLarge") throw;
        j["predicates"] = json(nullptr);
    }
    j["maximal_ideals"] = std::move(tags);
    return j;
}

std::pair<int, json> cmd_classes(const Ring& ring, const json& input, const DecisionPolicy& policy) {
    auto tag = class_tag_from_name(input.at("tag").get<std::string>());
    if (!tag) fail("ParseError", "unknown class tag: " + input.at("tag").get<std::string>());
    MorphObject m = morph_object_from_json(ring, input.at("m"));
    MorphObject n = morph_object_from_json(ring, input.at("n"));
    ClassReport rep = class_equal(m, n, *tag, policy);
    int code = rep.verdict == ClassVerdict::Equal ? 0
               : rep.verdict == ClassVerdict::NotEqual ? 1 : 3;
    return {code, class_report_to_json(rep)};
}

std::pair<int, json> cmd_match(const Ring& ring, const json& input, const DecisionPolicy& policy) {
    std::vector<ClassTag> tags;
    for (const auto& t : input.at("tags")) {
        auto tag = class_tag_from_name(t.get<std::string>());
        if (!tag) fail("ParseError", "unknown class tag: " + t.get<std::string>());
        tags.push_back(*tag);
    }
    std::vector<MorphObject> ms, ns;
    for (const auto& obj : input.at("ms")) ms.push_back(morph_object_from_json(ring, obj));
    for (const auto& obj : input.at("ns")) ns.push_back(morph_object_from_json(ring, obj));
    MatchResult r = match_decompositions(ms, ns, tags, policy);
    int code = r.verdict == IsoVerdict::Isomorphic ? 0
               : r.verdict == IsoVerdict::NotIsomorphic ? 1 : 3;
    return {code, match_result_to_json(r)};
}

std::pair<int, json> cmd_equiv_diag(const Ring& ring, const json& input) {
    std::vector<mpq_class> as, bs;
    for (const auto& v : input.at("a")) as.push_back(scalar_from_json(ring, v));
    for (const auto& v : input.at("b")) bs.push_back(scalar_from_json(ring, v));
    DiagEquivResult r = diag_equiv(as, bs, ring);
    return {r.equivalent ? 0 : 1, diag_equiv_to_json(r)};
}

std::pair<int, json> cmd_verify(const Ring& ring, const json& input) {
    std::vector<MorphObject> objects;
    if (input.contains("objects"))
        for (const auto& obj : input["objects"]) objects.push_back(morph_object_from_json(ring, obj));
    else if (input.contains("object"))
        objects.push_back(morph_object_from_json(ring, input["object"]));
    else
        fail("ParseError", "verify needs \"object\" or \"objects\"");

    bool all_ok = true;
    json seq = json::array();
    json locality = json::array();
    for (const auto& m : objects) {
        SequenceReport rep = verify_canonical_sequence(m);
        if (!rep.ok()) all_ok = false;
        seq.push_back(sequence_report_to_json(rep));
        if (ring.is_finite()) {
            LocalityReport lr = locality_criteria_check(m);
            if (!lr.agree || !lr.lemma61_agree || !lr.closing_agree) all_ok = false;
            locality.push_back(locality_report_to_json(lr));
        }
    }
    json j;
    j["sequences"] = std::move(seq);
    if (ring.is_finite()) {
        IdealCheckReport ic = check_ideal_lemmas(ring);
        if (!ic.ok()) all_ok = false;
        j["ideal_lemmas"] = ideal_check_to_json(ic);
        j["locality"] = std::move(locality);
    }
    j["pass"] = all_ok;
    return {all_ok ? 0 : 1, j};
}

std::pair<int, json> cmd_oracle(const Ring& ring, const json& input, std::uint64_t seed) {
    CorpusSpec spec{ring,
                    input.value("max_gens", std::size_t(2)),
                    input.value("max_exponent", 2u),
                    input.value("count", std::size_t(12)),
                    input.value("seed", seed)};
    Corpus corpus = generate_corpus(spec);

    json failures = json::array();
    std::size_t pairs = 0, skipped = 0;
    for (std::size_t i = 0; i < corpus.objects.size(); ++i)
        for (std::size_t j2 = i; j2 < corpus.objects.size(); ++j2) {
            bool oracle;
            try {
                oracle = brute_force_iso(corpus.objects[i], corpus.objects[j2]);
            } catch (const Error&) {
                ++skipped;
                continue;
            }
            IsoResult fast = iso_test(corpus.objects[i], corpus.objects[j2]);
            ++pairs;
            if (fast.verdict == IsoVerdict::Undecided) continue;
            if ((fast.verdict == IsoVerdict::Isomorphic) != oracle) {
                json f;
                f["i"] = i;
                f["j"] = j2;
                f["oracle"] = oracle;
                f["fast"] = fast.verdict == IsoVerdict::Isomorphic ? "isomorphic" : "not";
                failures.push_back(std::move(f));
            }
        }

    json j;
    j["objects"] = corpus.objects.size();
    j["pairs_checked"] = pairs;
    j["pairs_skipped"] = skipped;
    j["failures"] = failures;
    j["pass"] = failures.empty();
    if (input.contains("snapshot_path")) {
        std::ofstream snap(input["snapshot_path"].get<std::string>());
        snap << corpus_to_jsonl(corpus);
        j["snapshot"] = input["snapshot_path"];
    }
    return {failures.empty() ? 0 : 1, j};
}

void render_text(const json& j, std::ostream& os, const std::string& prefix = "") {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object() || value.is_array()) {
                os << prefix << key << ":\n";
                render_text(value, os, prefix + "  ");
            } else {
                os << prefix << key << " = " << value.dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (j[i].is_object() || j[i].is_array()) {
                os << prefix << "- [" << i << "]\n";
                render_text(j[i], os, prefix + "  ");
            } else {
                os << prefix << "- " << j[i].dump() << "\n";
            }
        }
    } else {
        os << prefix << j.dump() << "\n";
    }
}

}  // namespace

JobResult run_job_on(const std::string& command, const json& input, std::uint64_t seed,
                     unsigned trials, const std::string& format) {
    if (format != "json" && format != "text")
        fail("ParseError", "unknown format: " + format);

    int code = 0;
    json report;
    Ring ring = ring_from_json(input.at("ring"));
    DecisionPolicy policy = policy_from(seed, trials);

    if (command == "decompose") {
        report = cmd_decompose(ring, input);
    } else if (command == "endo") {
        report = cmd_endo(ring, input, seed);
    } else if (command == "classes") {
        std::tie(code, report) = cmd_classes(ring, input, policy);
    } else if (command == "match") {
        std::tie(code, report) = cmd_match(ring, input, policy);
    } else if (command == "equiv-diag") {
        std::tie(code, report) = cmd_equiv_diag(ring, input);
    } else if (command == "verify") {
        std::tie(code, report) = cmd_verify(ring, input);
    } else if (command == "oracle") {
        std::tie(code, report) = cmd_oracle(ring, input, seed);
    } else {
        fail("ParseError", "unknown command: " + command);
    }

    JobResult out;
    out.exit_code = code;
    if (format == "json") {
        out.report = canonical_dump(report) + "\n";
    } else {
        std::ostringstream os;
        render_text(report, os);
        out.report = os.str();
    }
    return out;
}

JobResult run_job(const JobSpec& spec) {
    std::ifstream in(spec.input_path);
    if (!in) {
        return JobResult{2, "error: cannot open input file " + spec.input_path + "\n"};
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();

    json input;
    try {
        input = json::parse(text);
    } catch (const json::parse_error& e) {
        // Report the position as line/column for easier pinpointing.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return JobResult{2, "parse error at line " + std::to_string(line) + ", column " +
                                std::to_string(col) + ": " + e.what() + "\n"};
    }

    JobResult result;
    try {
        result = run_job_on(spec.command, input, spec.seed, spec.trials, spec.format);
    } catch (const Error& e) {
        return JobResult{e.code() == "Undecided" ? 3 : 2, std::string("error: ") + e.what() + "\n"};
    } catch (const json::exception& e) {
        return JobResult{2, std::string("input error: ") + e.what() + "\n"};
    }

    if (!spec.output_path.empty()) {
        std::string tmp = spec.output_path + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary);
            if (!out) return JobResult{2, "error: cannot write " + tmp + "\n"};
            out << result.report;
        }
        if (std::rename(tmp.c_str(), spec.output_path.c_str()) != 0)
            return JobResult{2, "error: cannot move report into place\n"};
    }
    return result;
}

}  // namespace morphcat

#include <iostream>

#include "CLI11.hpp"
#include "morphcat/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"morphcat: exact computations in the category of module morphisms"};
    app.require_subcommand(1);

    morphcat::JobSpec spec;
    const char* commands[] = {"decompose", "endo", "classes", "match", "equiv-diag", "verify",
                              "oracle"};
    const char* descriptions[] = {
        "rank decomposition of a field object into the three indecomposables",
        "endomorphism algebra: radical, blocks, type, locality, maximal ideals",
        "class equality (d, c, 0m, 1m, 0e, 1e) with witnesses",
        "permutation matching of two direct-sum decompositions",
        "equivalence of diagonal matrices with transform certificates",
        "canonical exact sequence, ideal lemmas, locality criteria",
        "corpus cross-check of iso_test against the brute-force oracle"};
    for (std::size_t i = 0; i < 7; ++i) {
        auto* sub = app.add_subcommand(commands[i], descriptions[i]);
        sub->add_option("--input", spec.input_path, "input JSON path")->required();
        sub->add_option("--output", spec.output_path, "report path (default stdout)");
        sub->add_option("--seed", spec.seed, "seed for randomized policies (default 0)");
        sub->add_option("--trials", spec.trials, "randomized trial budget (default 512)");
        sub->add_option("--format", spec.format, "json|text (default json)");
        sub->callback([&spec, name = std::string(commands[i])] { spec.command = name; });
    }

    CLI11_PARSE(app, argc, argv);

    morphcat::JobResult result = morphcat::run_job(spec);
    if (spec.output_path.empty() || result.exit_code == 2) std::cout << result.report;
    return result.exit_code;
}

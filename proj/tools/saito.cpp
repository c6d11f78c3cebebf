#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "saito/cli.hpp"

int main(int argc, char** argv) {
    using saito::cli::Command;
    CLI::App app{"saito: enhanced Burnside rings, orbifold zeta functions and Saito duality"};
    app.require_subcommand(1);

    Command cmd;
    cmd.max_order = saito::cli::max_order_from_env();
    std::string format = "text";
    std::string subgroup;

    auto common = [&](CLI::App* sub, bool inputs_required) {
        auto* in = sub->add_option("inputs", cmd.inputs, "polynomial spec files");
        if (inputs_required) in->required();
        sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--max-order", cmd.max_order, "largest group order to enumerate (env SAITO_MAX_ORDER)");
    };
    auto with_subgroup = [&](CLI::App* sub) {
        sub->add_option("--subgroup", subgroup, "trivial, full, all, or generators like \"(1/2,0) (0,1/3)\"");
    };
    auto with_theorem = [&](CLI::App* sub) {
        sub->add_option("--theorem", cmd.theorem, "prop_dual, thm1, thm2, corollary or all");
    };

    auto* info = app.add_subcommand("info", "exponent matrix, weights, symmetry group");
    common(info, true);
    auto* euler = app.add_subcommand("euler", "enhanced Euler characteristic of the Milnor fibre");
    common(euler, true);
    auto* zeta = app.add_subcommand("zeta", "reduced orbifold zeta function");
    common(zeta, true);
    with_subgroup(zeta);
    auto* dual = app.add_subcommand("dual", "transpose polynomial and dual subgroup");
    common(dual, true);
    with_subgroup(dual);
    auto* verify = app.add_subcommand("verify", "check the duality statements exactly");
    common(verify, true);
    with_subgroup(verify);
    with_theorem(verify);
    auto* fuzz = app.add_subcommand("fuzz", "seeded random checks of the structural laws");
    common(fuzz, false);
    fuzz->add_option("--seed", cmd.seed, "first case seed");
    fuzz->add_option("--iterations", cmd.iterations, "cases per property");
    auto* batch = app.add_subcommand("batch", "verify every .poly file of a directory");
    common(batch, true);
    with_subgroup(batch);
    with_theorem(batch);
    batch->add_option("--output", cmd.output_dir, "directory for per-input results");
    batch->add_option("--jobs", cmd.jobs, "worker threads (0: one per core)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    cmd.verb = app.get_subcommands().front()->get_name();
    cmd.format = format == "json" ? saito::Format::Json : saito::Format::Text;
    if (!subgroup.empty()) cmd.subgroup = subgroup;

    const auto outcome = saito::cli::run(cmd);
    if (!outcome.error.empty()) std::cerr << outcome.error << "\n";
    else std::cout << saito::emit(outcome.report, cmd.format);
    return outcome.exit_code;
}

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "hyperlab_cli/run.hpp"

namespace {

using hyperlab::cli::json;

struct Flags {
    std::string config;
    std::string out;
    std::string csv;
    std::uint64_t seed = 0;
    std::int64_t grid = 0;
    std::int64_t horizon = 0;
};

void add_flags(CLI::App* app, Flags& f) {
    app->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
    app->add_option("--out", f.out, "write the JSON report here");
    app->add_option("--csv", f.csv, "write the orbit trace as CSV (simulate orbit)");
    app->add_option("--seed", f.seed, "override the config seed");
    app->add_option("--grid", f.grid, "override the parameter grid size");
    app->add_option("--horizon", f.horizon, "override the command's horizon");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperlab: hypercyclicity criteria, constructions and orbit checks for weighted shifts"};
    app.require_subcommand(1);
    Flags flags;
    hyperlab::cli::Invocation inv;

    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, const std::string& group) {
        CLI::App* sub = parent->add_subcommand(name, help);
        add_flags(sub, flags);
        sub->callback([&inv, group, name]() {
            inv.group = group;
            inv.name = group == name ? "" : name;
        });
        return sub;
    };

    CLI::App* check = app.add_subcommand("check", "evaluate a criterion");
    check->require_subcommand(1);
    leaf(check, "shift", "unilateral shift predicates (hcs, ufhc, ufhcs)", "check");
    leaf(check, "bilateral", "bilateral decay summability", "check");
    leaf(check, "kothe", "Kothe-space limsup ratio test", "check");
    leaf(check, "rp", "infimal exterior radius r_P", "check");
    leaf(check, "chc", "common hypercyclicity criterion evidence", "check");

    CLI::App* construct = app.add_subcommand("construct", "run a constructive procedure");
    construct->require_subcommand(1);
    leaf(construct, "chc", "block vector for a parameter interval", "construct");
    leaf(construct, "bilateral-basis", "decaying basis for a bilateral shift", "construct");
    leaf(construct, "mk-basis", "nested basis for Kothe families", "construct");
    leaf(construct, "nicemn", "finite-horizon basis synthesis", "construct");

    CLI::App* simulate = app.add_subcommand("simulate", "orbit simulation and verification");
    simulate->require_subcommand(1);
    leaf(simulate, "orbit", "orbit trace", "simulate");
    leaf(simulate, "return", "return set and its density", "simulate");
    leaf(simulate, "sweep", "hitting or decay sweep", "simulate");

    leaf(&app, "density", "densities of integer sets", "density");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (!flags.config.empty()) {
        std::ifstream in(flags.config);
        try {
            inv.config = json::parse(in);
        } catch (const json::exception& e) {
            std::cerr << "hyperlab: malformed config: " << e.what() << "\n";
            inv.config = json();  // run() reports the schema error
        }
    }
    auto* leaf_app = app.get_subcommands().front();
    while (!leaf_app->get_subcommands().empty()) leaf_app = leaf_app->get_subcommands().front();
    if (leaf_app->count("--seed")) inv.seed = flags.seed;
    if (leaf_app->count("--grid")) inv.grid = flags.grid;
    if (leaf_app->count("--horizon")) inv.horizon = flags.horizon;

    const hyperlab::cli::RunOutcome r = hyperlab::cli::run(inv);
    const std::string text = r.report.dump(2);
    std::cout << text << "\n";
    if (!flags.out.empty()) {
        std::ofstream out(flags.out);
        out << text << "\n";
        if (!out) {
            std::cerr << "hyperlab: cannot write " << flags.out << "\n";
            return 2;
        }
    }
    if (!flags.csv.empty() && !r.csv.empty()) {
        std::ofstream out(flags.csv);
        out << r.csv;
    }
    if (r.exit_code == 2 && r.report.contains("error"))
        std::cerr << "hyperlab: " << r.report["error"].get<std::string>() << "\n";
    return r.exit_code;
}

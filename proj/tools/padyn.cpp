#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "padyn/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{std::string(padyn::tool_name) + " " + padyn::tool_version +
                 " -- exact verification of non-archimedean rational-map dynamics"};
    app.require_subcommand(1);

    padyn::JobSpec spec;

    auto add_common = [&spec](CLI::App* cmd, bool needs_input) {
        if (needs_input)
            cmd->add_option("--input", spec.input_path, "input JSON file")->required();
        cmd->add_option("--samples", spec.samples, "points / pairs per sampled check")
            ->capture_default_str();
        cmd->add_option("--seed", spec.seed, "deterministic sampling seed")->capture_default_str();
        cmd->add_option("--precision", spec.precision, "target precision N for root lifting")
            ->capture_default_str();
        cmd->add_option("--degree-cap", spec.degree_cap, "iterate degree cap")
            ->capture_default_str();
        cmd->add_option("--out", spec.out_path, "write the report to this file instead of stdout");
        cmd->add_option("--format", spec.format, "report format")
            ->check(CLI::IsMember({"json", "text"}))
            ->capture_default_str();
    };

    add_common(app.add_subcommand("analyze",
                                  "normalize a map, reduce it mod p, classify periodic points"),
               true);
    add_common(app.add_subcommand("verify-siegel", "certify a cycle of disks as a Siegel cycle"),
               true);
    add_common(app.add_subcommand("construct-herman",
                                  "build the degree d+1 map whose rings cycle, and certify it"),
               true);
    add_common(app.add_subcommand("verify-herman", "certify a cycle of rings for a given map"),
               true);
    CLI::App* rep = app.add_subcommand("reproduce", "run a built-in worked example end to end");
    rep->add_option("--example", spec.example, "which example")->required()->check(CLI::Range(1, 2));
    add_common(rep, false);
    add_common(app.add_subcommand("selftest", "run the randomized property suites"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the diagnostic
        return 2;
    }

    spec.command = app.get_subcommands().front()->get_name();
    try {
        padyn::RunResult res = padyn::run(spec);
        std::string payload =
            spec.format == "text" ? res.text : res.document.dump(2) + "\n";
        if (!spec.out_path.empty()) {
            std::ofstream out(spec.out_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot write " << spec.out_path << "\n";
                return 2;
            }
            out << payload;
        } else {
            std::cout << payload;
        }
        return res.exit_code;
    } catch (const padyn::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

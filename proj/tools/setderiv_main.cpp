// Experiment runner: validates set-derivative computations on grid geometry
// and writes CSV/SVG artifacts plus a machine-readable verdict per run.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "setderiv/errors.hpp"
#include "setderiv/experiments.hpp"
#include "setderiv/parallel.hpp"

using namespace setderiv;

namespace {

int list_experiments(const std::string& filter) {
    for (const auto& e : experiment_registry()) {
        std::string hay = e.name + " " + e.description + " " + e.anchor;
        if (!filter.empty() && hay.find(filter) == std::string::npos) continue;
        std::cout << e.name << "\n    " << e.description << "\n    [" << e.anchor << "]\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"setderiv: set-derivative experiments on grid geometry"};
    app.footer(
        "Exit codes: 0 ok, 2 config parse, 3 unknown experiment, 4 verdict mismatch,\n"
        "10+ module errors (see README for the full table).");

    std::string config_path, out_dir, filter;
    int threads = 0;
    bool do_list = false, strict = false;
    app.add_option("--config", config_path, "experiment config file");
    app.add_option("--out", out_dir, "output directory (overridden by SETDERIV_OUT)");
    app.add_option("--threads", threads, "worker thread cap (default: all cores)");
    app.add_flag("--list", do_list, "list registered experiments");
    app.add_option("--filter", filter, "substring filter for --list");
    app.add_flag("--strict", strict, "treat inconclusive verdicts as failure");
    CLI11_PARSE(app, argc, argv);

    try {
        if (do_list) return list_experiments(filter);
        if (config_path.empty()) {
            std::cerr << "either --list or --config is required\n";
            return (int)ErrorCode::ConfigParse;
        }
        Config cfg = Config::parse_file(config_path);
        ExperimentConfig ec = experiment_config_from(cfg);
        if (threads > 0) ec.threads = threads;
        if (ec.threads > 0) set_thread_count((int)ec.threads);
        if (strict) ec.strict = true;
        if (!out_dir.empty()) ec.out_dir = out_dir;
        if (const char* env = std::getenv("SETDERIV_OUT")) ec.out_dir = env;

        ExperimentOutcome oc = run_experiment(ec);
        write_artifacts(oc, ec.out_dir);
        for (const auto& line : oc.lines) std::cout << line << '\n';
        std::cout << (oc.pass ? "PASS " : "FAIL ") << oc.name << " ("
                  << format_double(oc.seconds) << " s)\n";
        bool ok = ec.strict ? oc.strict_pass : oc.pass;
        return ok ? 0 : (int)ErrorCode::VerdictMismatch;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return (int)e.code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return (int)ErrorCode::Other;
    }
}

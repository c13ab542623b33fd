#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "permcount/cli.hpp"
#include "permcount/errors.hpp"

using permcount::cli::RunConfig;

namespace {

unsigned default_workers()
{
    if (const char* env = std::getenv("PERMCOUNT_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1)
            return unsigned(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"permutation polynomial degree-drop counter and verifier"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.workers = default_workers();
    std::string format = "markdown";
    app.add_option("--format", format, "output format: json, csv or markdown")
        ->check(CLI::IsMember({"json", "csv", "markdown"}));
    app.add_option("--workers", cfg.workers, "worker thread count (overrides PERMCOUNT_WORKERS)");
    app.add_option("--cache", cfg.cache_path, "newline-delimited JSON result cache file");
    app.add_flag("--timings", cfg.timings, "include wall-clock columns in the output");

    uint32_t qmax_table = 11;
    auto* table = app.add_subcommand("table", "compute N for every prime power up to qmax and "
                                              "compare against the built-in reference values");
    table->fallthrough();
    table->add_option("--qmax", qmax_table, "largest field size (<= 20)")->required();

    auto* count = app.add_subcommand("count", "count permutations whose polynomial degree drops "
                                              "below q-2, for one field");
    count->fallthrough();
    count->add_option("--field", cfg.field_spec, "field spec: q, p^f or p^f/c_f,...,c_0")->required();
    count->add_option("--method", cfg.method,
                      "auto, interpolation, criterion, inclexcl or permanent");

    auto* verify = app.add_subcommand("verify", "run the identity and inequality suites for one field");
    verify->fallthrough();
    verify->add_option("--field", cfg.field_spec, "field spec")->required();
    verify->add_option("--seed", cfg.seed, "seed for the sampled suites");

    uint32_t qmax_bounds = 11;
    auto* bounds = app.add_subcommand("bound-report", "emit the bound margins for every prime "
                                                      "power up to qmax");
    bounds->fallthrough();
    bounds->add_option("--qmax", qmax_bounds, "largest field size (<= 16)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.format = permcount::cli::parse_format(format);
        if (table->parsed())
            return permcount::cli::cmd_table(qmax_table, cfg, std::cout, std::cerr);
        if (count->parsed())
            return permcount::cli::cmd_count(cfg, std::cout, std::cerr);
        if (verify->parsed())
            return permcount::cli::cmd_verify(cfg, std::cout, std::cerr);
        if (bounds->parsed())
            return permcount::cli::cmd_bound_report(qmax_bounds, cfg, std::cout, std::cerr);
    } catch (const permcount::Error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#include "brane_gauge/cli/run.hpp"

#include <CLI11.hpp>

#include <map>

using brane_gauge::cli::Backend;
using brane_gauge::cli::JobConfig;

int main(int argc, char** argv) {
    JobConfig cfg;
    CLI::App app{"Holomorphic gauge fields and Yang-Mills critical points on B-branes"};
    app.add_option("command", cfg.command,
                   "validate | gauge-exists | gauge-space | ym-solve | ym-eval | euler-check | cech | chi-check")
        ->required();
    app.add_option("--input", cfg.input, "input JSON document");
    app.add_option("--output", cfg.output, "directory for report.json and TSV tables (default: report on stdout)");
    app.add_option("--tol", cfg.tol, "numerical tolerance")->capture_default_str();
    app.add_option("--seeds", cfg.seeds, "multistart count for ym-solve")->capture_default_str();
    app.add_option("--seed", cfg.seed, "base RNG seed")->capture_default_str();
    app.add_option("--grid", cfg.grid, "quadrature resolution for cech")->capture_default_str();
    std::map<std::string, Backend> backends{{"exact", Backend::exact}, {"float", Backend::floating}};
    app.add_option("--backend", cfg.backend, "exact | float")
        ->transform(CLI::CheckedTransformer(backends, CLI::ignore_case))
        ->capture_default_str();
    std::map<std::string, brane_gauge::ym::Mode> modes{{"total", brane_gauge::ym::Mode::total},
                                                       {"per-degree", brane_gauge::ym::Mode::per_degree}};
    app.add_option("--mode", cfg.mode, "total | per-degree")->transform(CLI::CheckedTransformer(modes));
    int k = 0;
    auto* kopt = app.add_option("--k", k, "line bundle degree for cech");
    std::string lambda, space;
    auto* lopt = app.add_option("--lambda", lambda, "gauge parameters for ym-eval: re,im;re,im;...");
    auto* sopt = app.add_option("--space", space, "chi-check without input: projective | torus");
    app.add_option("--dim", cfg.dim, "chi-check: n for P^n or g for the torus");
    app.add_option("--rank", cfg.rank, "chi-check: bundle rank");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return brane_gauge::cli::kSchemaError;
    }
    if (*kopt) cfg.k = k;
    if (*lopt) cfg.lambda = lambda;
    if (*sopt) cfg.space = space;
    return brane_gauge::cli::run(cfg);
}

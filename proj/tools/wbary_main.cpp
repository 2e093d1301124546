#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "wbary/experiments.hpp"
#include "wbary/serialization.hpp"
#include "wbary/symmetry.hpp"
#include "wbary/wbarycenter.hpp"

namespace {

using wbary::Json;

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"exact transport, barycenters, and symmetry projections on model geometries"};
  app.require_subcommand(1);

  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 7;
  app.add_option("--out", out_path, "write the result to a file instead of stdout");
  app.add_option("--format", format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "seed for randomized runs");

  // --- w2 ---
  auto* w2 = app.add_subcommand("w2", "transport distance between two measures");
  std::string w2_mu, w2_nu;
  bool w2_plan = false;
  w2->add_option("mu", w2_mu, "source measure JSON file")->required();
  w2->add_option("nu", w2_nu, "target measure JSON file")->required();
  w2->add_flag("--plan", w2_plan, "also print the optimal plan");

  // --- interp ---
  auto* interp = app.add_subcommand("interp", "displacement interpolation");
  std::string in_mu, in_nu;
  double interp_t = -1.0;
  int interp_grid = 11;
  interp->add_option("mu", in_mu)->required();
  interp->add_option("nu", in_nu)->required();
  interp->add_option("--t", interp_t, "single interpolation parameter in [0,1]");
  interp->add_option("--grid", interp_grid, "uniform grid size when --t is not given");

  // --- frechet ---
  auto* frechet_cmd = app.add_subcommand("frechet", "barycenter point and variance");
  std::string fr_mu;
  frechet_cmd->add_option("mu", fr_mu)->required();

  // --- barycenter ---
  auto* bary = app.add_subcommand("barycenter", "barycenter of a measure ensemble");
  std::string bary_ens, bary_init, bary_history;
  int bary_init_index = -1;
  int bary_max_iter = wbary::tol().barycenter_max_iterations;
  double bary_tol = wbary::tol().barycenter_tol;
  bary->add_option("ensemble", bary_ens)->required();
  bary->add_option("--init", bary_init, "initial candidate measure JSON file");
  bary->add_option("--init-index", bary_init_index, "use the given ensemble entry as init");
  bary->add_option("--max-iter", bary_max_iter);
  bary->add_option("--tol", bary_tol, "stop when the objective decrease drops below this");
  bary->add_option("--history-out", bary_history, "write the objective history CSV here");

  // --- symmetry ---
  auto* sym = app.add_subcommand("symmetry", "variance sandwich for a group action");
  std::string sym_group, sym_mu;
  sym->add_option("group", sym_group, "group JSON file (generators + bound)")->required();
  sym->add_option("mu", sym_mu)->required();

  // --- example ---
  auto* example = app.add_subcommand("example", "run one named experiment");
  std::string example_name;
  double ex_eps = 0.1, ex_circ = 1.0, ex_delta = 0.1;
  int ex_trials = 100, ex_k = 4;
  std::string ex_space = "r2";
  example->add_option("name", example_name,
                      "sphere | balloon | cylinder | positive-curvature | convexity | "
                      "jensen | projection")
      ->required();
  example->add_option("--eps", ex_eps, "balloon offset");
  example->add_option("--circumference", ex_circ, "cylinder circumference");
  example->add_option("--delta", ex_delta, "cylinder offset");
  example->add_option("--trials", ex_trials, "suite trial count");
  example->add_option("--k", ex_k, "rotation order for the projection suite");
  example->add_option("--space", ex_space, "space shorthand for the suites (r2, r3, h2, ...)");

  // --- verify ---
  auto* verify = app.add_subcommand("verify", "run the full experiment suite");

  CLI11_PARSE(app, argc, argv);

  if (*w2) {
    const auto mu = wbary::measure_from_json(read_json(w2_mu));
    const auto nu = wbary::measure_from_json(read_json(w2_nu));
    const auto coupling = wbary::solve_ot(mu, nu);
    Json j{{"w2", std::sqrt(std::max(0.0, coupling.cost()))}, {"cost", coupling.cost()}};
    if (w2_plan) j["plan"] = wbary::to_json(coupling);
    emit(j.dump(2), out_path);
    return 0;
  }
  if (*interp) {
    const auto mu = wbary::measure_from_json(read_json(in_mu));
    const auto nu = wbary::measure_from_json(read_json(in_nu));
    const auto coupling = wbary::solve_ot(mu, nu);
    if (interp_t >= 0.0) {
      const auto mid = wbary::displacement_interpolant(coupling, interp_t);
      emit(wbary::to_json(mid).dump(2), out_path);
      return 0;
    }
    const auto path = wbary::displacement_path(coupling, wbary::uniform_grid(interp_grid));
    emit(format == "csv" ? wbary::path_to_csv(path) : wbary::to_json(path).dump(2), out_path);
    return 0;
  }
  if (*frechet_cmd) {
    const auto mu = wbary::measure_from_json(read_json(fr_mu));
    emit(wbary::to_json(wbary::frechet_mean(mu)).dump(2), out_path);
    return 0;
  }
  if (*bary) {
    const auto ensemble = wbary::ensemble_from_json(read_json(bary_ens));
    wbary::EnsembleBarycenterResult result = [&] {
      if (!bary_init.empty())
        return wbary::w2_barycenter(ensemble, wbary::measure_from_json(read_json(bary_init)),
                                    bary_max_iter, bary_tol);
      if (bary_init_index >= 0)
        return wbary::w2_barycenter(ensemble,
                                    ensemble.entry(static_cast<std::size_t>(bary_init_index)).measure,
                                    bary_max_iter, bary_tol);
      return wbary::w2_barycenter(ensemble);
    }();
    emit(wbary::to_json(result).dump(2), out_path);
    if (!bary_history.empty()) emit(wbary::history_to_csv(result.history), bary_history);
    return 0;
  }
  if (*sym) {
    const auto group = wbary::group_from_json(read_json(sym_group));
    const auto mu = wbary::measure_from_json(read_json(sym_mu));
    emit(wbary::to_json(wbary::sandwich_report(group, mu)).dump(2), out_path);
    return 0;
  }
  if (*example) {
    wbary::ExperimentReport report;
    if (example_name == "sphere") {
      report = wbary::run_sphere_example();
    } else if (example_name == "balloon") {
      report = wbary::run_balloon_example(ex_eps);
    } else if (example_name == "cylinder") {
      report = wbary::run_cylinder_counterexample(ex_circ, ex_delta);
    } else if (example_name == "positive-curvature") {
      report = wbary::run_positive_curvature_counterexample(seed);
    } else if (example_name == "convexity") {
      report = wbary::run_convexity_suite(wbary::space_from_shorthand(ex_space), ex_trials, seed);
    } else if (example_name == "jensen") {
      report = wbary::run_jensen_suite(wbary::space_from_shorthand(ex_space), ex_trials, seed);
    } else if (example_name == "projection") {
      report = wbary::run_projection_suite(ex_k, ex_trials, seed);
    } else {
      std::cerr << "unknown example: " << example_name << "\n";
      return 2;
    }
    std::cerr << wbary::render_table(report);
    emit(wbary::to_json(report).dump(2), out_path);
    return report.pass() ? 0 : 1;
  }
  if (*verify) {
    const auto reports = wbary::run_full_verification(seed);
    Json all = Json::array();
    bool ok = true;
    for (const auto& report : reports) {
      std::cerr << wbary::render_table(report);
      all.push_back(wbary::to_json(report));
      ok = ok && report.pass();
    }
    emit(all.dump(2), out_path);
    std::cerr << (ok ? "all experiments passed\n" : "SOME EXPERIMENTS FAILED\n");
    return ok ? 0 : 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
}

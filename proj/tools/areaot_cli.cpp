// Copyright 2026 The areaot Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// areaot command-line interface: solve, bench, gen, oracle, audit.
//
// Exit codes: 0 success, 1 runtime failure (non-finite iterates, output I/O),
// 2 iteration cap reached before the target gap, 3 input error.

#include <atomic>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "areaot/areaot.hpp"

namespace {

using areaot::Problem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitIterationCap = 2;
constexpr int kExitInput = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InstanceOptions {
  std::string cost;
  std::string r_file;
  std::string c_file;
  std::vector<std::string> images;
  double noise_floor = 0.01;
  bool downsample = false;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

void add_instance_options(CLI::App* cmd, InstanceOptions& opt) {
  cmd->add_option("--cost", opt.cost, "Cost: CSV file, manhattan:WxH or euclidean:WxH");
  cmd->add_option("--r", opt.r_file, "Source marginal CSV");
  cmd->add_option("--c", opt.c_file, "Target marginal CSV");
  cmd->add_option("--images", opt.images, "Two P2 PGM images giving r and c")->expected(2);
  cmd->add_option("--noise-floor", opt.noise_floor, "Per-pixel mass added before normalizing")
      ->capture_default_str();
  cmd->add_flag("--downsample", opt.downsample, "Keep every other pixel of each image");
  cmd->add_option("--n", opt.n, "Size of a random instance when no --cost is given");
  cmd->add_option("--seed", opt.seed, "Seed for random instances and marginals")->capture_default_str();
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& dims) {
  const auto x = dims.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument("missing x");
    std::size_t used = 0;
    const long long w = std::stoll(dims.substr(0, x), &used);
    if (used != x) throw std::invalid_argument("trailing");
    const std::string hs = dims.substr(x + 1);
    const long long h = std::stoll(hs, &used);
    if (used != hs.size()) throw std::invalid_argument("trailing");
    if (w < 1 || h < 1) throw std::invalid_argument("nonpositive");
    return {static_cast<std::size_t>(w), static_cast<std::size_t>(h)};
  } catch (const std::exception&) {
    throw InputError("bad grid dimensions '" + dims + "' (expected WxH)");
  }
}

areaot::Vector random_marginal(std::size_t n, areaot::SplitMix64& rng) {
  areaot::Vector v(n);
  for (double& e : v) e = rng.exponential();
  return v;
}

Problem load_instance(const InstanceOptions& opt, json& desc) {
  try {
    std::optional<areaot::SquareMatrix> cost;
    std::vector<areaot::GrayImage> imgs;
    for (const auto& path : opt.images) {
      areaot::GrayImage img = areaot::parse_pgm(areaot::read_text_file(path));
      if (opt.downsample) img = areaot::downsample_stride2(img);
      imgs.push_back(std::move(img));
    }
    if (imgs.size() == 2 &&
        (imgs[0].width != imgs[1].width || imgs[0].height != imgs[1].height)) {
      throw InputError("--images: the two images differ in size");
    }

    if (opt.cost.empty()) {
      if (!imgs.empty()) {
        cost = areaot::cost_manhattan(imgs[0].width, imgs[0].height);
        desc["cost"] = "manhattan:" + std::to_string(imgs[0].width) + "x" +
                       std::to_string(imgs[0].height);
      } else if (opt.r_file.empty() && opt.c_file.empty()) {
        if (opt.n == 0) throw InputError("no instance: give --cost, --images or --n");
        desc["cost"] = "random";
        desc["n"] = opt.n;
        desc["seed"] = opt.seed;
        return areaot::gen_random_instance(opt.n, opt.seed);
      } else {
        throw InputError("--r/--c need a --cost");
      }
    } else if (opt.cost.rfind("manhattan:", 0) == 0) {
      const auto [w, h] = parse_grid(opt.cost.substr(10));
      cost = areaot::cost_manhattan(w, h);
      desc["cost"] = opt.cost;
    } else if (opt.cost.rfind("euclidean:", 0) == 0) {
      const auto [w, h] = parse_grid(opt.cost.substr(10));
      cost = areaot::cost_euclidean(w, h);
      desc["cost"] = opt.cost;
    } else {
      cost = areaot::read_matrix_csv(opt.cost);
      desc["cost"] = opt.cost;
    }

    const std::size_t n = cost->n;
    areaot::Vector r, c;
    if (imgs.size() == 2) {
      r = areaot::image_to_distribution(imgs[0], opt.noise_floor);
      c = areaot::image_to_distribution(imgs[1], opt.noise_floor);
      desc["marginals"] = json{{"images", opt.images},
                               {"noise_floor", opt.noise_floor},
                               {"downsample", opt.downsample}};
    } else if (!opt.r_file.empty() && !opt.c_file.empty()) {
      r = areaot::read_vector_csv(opt.r_file);
      c = areaot::read_vector_csv(opt.c_file);
      desc["marginals"] = json{{"r", opt.r_file}, {"c", opt.c_file}};
    } else if (opt.r_file.empty() && opt.c_file.empty()) {
      areaot::SplitMix64 rng(opt.seed);
      r = random_marginal(n, rng);
      c = random_marginal(n, rng);
      desc["marginals"] = json{{"random_seed", opt.seed}};
    } else {
      throw InputError("give both --r and --c");
    }
    if (r.size() != n || c.size() != n) {
      throw InputError("marginal length does not match cost size n = " + std::to_string(n));
    }
    return areaot::build_problem(*cost, r, c);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

areaot::SolverVariant parse_variant(const std::string& name) {
  if (name == "dualex") return areaot::SolverVariant::kDualExtrapolation;
  if (name == "mirrorprox") return areaot::SolverVariant::kMirrorProx;
  throw InputError("unknown solver '" + name + "'");
}

struct RunOptions {
  std::string solver = "dualex";
  std::string preset = "provable";
  double epsilon = 0.1;
  bool relative_epsilon = false;
  double kappa = 3.0;
  double eta = areaot::kSinkhornTheoryEta;
  double marginal_tol = 1e-6;
  std::optional<int> max_outer;
  std::optional<int> max_inner;
  int gap_check_every = 10;
  double movement_tol = 1e-9;
  bool timing = false;
};

void add_run_options(CLI::App* cmd, RunOptions& opt, bool with_solver) {
  if (with_solver) {
    cmd->add_option("--solver", opt.solver, "dualex, mirrorprox or sinkhorn")
        ->check(CLI::IsMember({"dualex", "mirrorprox", "sinkhorn"}))
        ->capture_default_str();
    cmd->add_option("--preset", opt.preset, "provable, reasonable or optimized")
        ->check(CLI::IsMember({"provable", "reasonable", "optimized"}))
        ->capture_default_str();
    cmd->add_option("--eta", opt.eta, "Sinkhorn regularization strength")->capture_default_str();
  }
  cmd->add_option("--epsilon", opt.epsilon, "Target additive error")->capture_default_str();
  cmd->add_flag("--relative-epsilon", opt.relative_epsilon, "Interpret --epsilon as a multiple of max cost");
  cmd->add_option("--kappa", opt.kappa, "Area-convexity constant")->capture_default_str();
  cmd->add_option("--marginal-tol", opt.marginal_tol, "Sinkhorn l1 marginal tolerance")
      ->capture_default_str();
  cmd->add_option("--max-outer", opt.max_outer, "Outer iteration cap (Sinkhorn: iteration cap)");
  cmd->add_option("--max-inner", opt.max_inner, "Cap on alternations per proximal step");
  cmd->add_option("--gap-check-every", opt.gap_check_every, "Outer iterations between gap checks")
      ->capture_default_str();
  cmd->add_option("--movement-tol", opt.movement_tol, "l1 early-stop threshold for alternations")
      ->capture_default_str();
  cmd->add_flag("--timing", opt.timing, "Record wall time in traces (otherwise 0, for reproducible files)");
}

struct RunResult {
  areaot::Solution solution;
  json config;
};

RunResult run_solver(const Problem& p, const RunOptions& opt, const std::string& solver,
                     const std::string& preset_name) {
  const double eps = opt.relative_epsilon ? opt.epsilon * p.d_max : opt.epsilon;
  json cfgj;
  cfgj["solver"] = solver;
  cfgj["n"] = p.n;
  cfgj["d_max"] = p.d_max;
  cfgj["timing"] = opt.timing;
  if (solver == "sinkhorn") {
    areaot::SinkhornConfig sc;
    sc.eta = opt.eta;
    sc.marginal_tol = opt.marginal_tol;
    sc.max_iter = opt.max_outer.value_or(sc.max_iter);
    sc.record_timing = opt.timing;
    cfgj["eta"] = sc.eta;
    cfgj["marginal_tol"] = sc.marginal_tol;
    cfgj["max_iter"] = sc.max_iter;
    if (!(sc.eta > 0.0) || sc.max_iter < 1 || sc.marginal_tol < 0.0) {
      throw InputError("invalid Sinkhorn configuration");
    }
    return {areaot::sinkhorn(p, sc).solution, cfgj};
  }

  areaot::SolverConfig cfg;
  cfg.variant = parse_variant(solver);
  cfg.epsilon = eps;
  cfg.kappa = opt.kappa;
  cfg.max_outer = opt.max_outer;
  cfg.max_inner = opt.max_inner;
  cfg.gap_check_every = opt.gap_check_every;
  cfg.movement_tol = opt.movement_tol;
  cfg.record_timing = opt.timing;
  areaot::apply_preset(cfg, areaot::parse_preset(preset_name), p.d_max);
  if (!(eps > 0.0) || !(cfg.kappa > 0.0) || cfg.gap_check_every < 1 || cfg.movement_tol < 0.0 ||
      (cfg.max_outer && *cfg.max_outer < 1) || (cfg.max_inner && *cfg.max_inner < 1)) {
    throw InputError("invalid solver configuration");
  }
  cfgj["preset"] = preset_name;
  cfgj["epsilon"] = eps;
  cfgj["kappa"] = cfg.kappa;
  cfgj["step_scale"] = cfg.step_scale;
  cfgj["entropy_weight"] = cfg.entropy_weight;
  cfgj["gap_check_every"] = cfg.gap_check_every;
  cfgj["movement_tol"] = cfg.movement_tol;
  cfgj["check_average"] = cfg.check_average;
  if (p.d_max > 0.0) {
    cfgj["max_outer"] = areaot::resolved_max_outer(p, cfg);
    cfgj["max_inner"] = areaot::resolved_max_inner(p, cfg);
  }
  return {areaot::solve(p, cfg), cfgj};
}

int status_code(const areaot::Solution& sol) {
  return sol.status == areaot::SolveStatus::kConverged ? kExitOk : kExitIterationCap;
}

int cmd_solve(const InstanceOptions& inst, const RunOptions& opt, const std::string& trace_path,
              const std::string& out_path) {
  json desc;
  const Problem p = load_instance(inst, desc);
  if (opt.solver != "sinkhorn") areaot::parse_preset(opt.preset);

  // Resolved configuration is printed before the solve starts.
  json preview;
  preview["instance"] = desc;
  preview["solver"] = opt.solver;
  preview["preset"] = opt.preset;
  preview["epsilon"] = opt.relative_epsilon ? opt.epsilon * p.d_max : opt.epsilon;
  preview["kappa"] = opt.kappa;
  preview["eta"] = opt.eta;
  preview["max_outer"] = opt.max_outer ? json(*opt.max_outer) : json("auto");
  preview["max_inner"] = opt.max_inner ? json(*opt.max_inner) : json("auto");
  preview["gap_check_every"] = opt.gap_check_every;
  preview["movement_tol"] = opt.movement_tol;
  preview["trace"] = trace_path;
  preview["out"] = out_path;
  std::cout << "config " << preview.dump() << std::endl;

  RunResult run = run_solver(p, opt, opt.solver, opt.preset);
  run.config["instance"] = desc;
  std::cout << "resolved " << run.config.dump() << std::endl;

  const auto& sol = run.solution;
  std::cout << "solver " << sol.solver << " status "
            << (sol.status == areaot::SolveStatus::kConverged ? "converged" : "iteration_limit")
            << " objective " << areaot::format_double(sol.objective) << " gap "
            << areaot::format_double(sol.gap) << " outer_iterations " << sol.outer_iterations
            << " matvecs " << sol.matvecs << std::endl;
  if (!trace_path.empty()) areaot::emit_trace(sol.trace, trace_path);
  if (!out_path.empty()) areaot::emit_solution(sol, out_path, run.config);
  return status_code(sol);
}

struct BenchOptions {
  std::string instance = "random:8";
  std::vector<std::uint64_t> seeds{1};
  std::vector<std::string> solvers{"dualex"};
  std::vector<std::string> presets{"provable", "optimized"};
  std::vector<double> etas{areaot::kSinkhornPracticalEta, areaot::kSinkhornTheoryEta};
  double noise_floor = 0.01;
  std::string out;
  int jobs = 1;
};

Problem bench_instance(const BenchOptions& opt, std::uint64_t seed) {
  if (opt.instance.rfind("random:", 0) == 0) {
    long long n = 0;
    try {
      n = std::stoll(opt.instance.substr(7));
    } catch (const std::exception&) {
      n = 0;
    }
    if (n < 1) throw InputError("bad instance '" + opt.instance + "'");
    return areaot::gen_random_instance(static_cast<std::size_t>(n), seed);
  }
  if (opt.instance.rfind("digits:", 0) == 0) {
    // Two synthetic 2W x 2H stroke images, stride-2 downsampled to W x H.
    const auto [w, h] = parse_grid(opt.instance.substr(7));
    const auto a = areaot::downsample_stride2(areaot::synthetic_stroke_image(2 * seed, 2 * w, 2 * h));
    const auto b =
        areaot::downsample_stride2(areaot::synthetic_stroke_image(2 * seed + 1, 2 * w, 2 * h));
    return areaot::build_problem(areaot::cost_manhattan(w, h),
                                 areaot::image_to_distribution(a, opt.noise_floor),
                                 areaot::image_to_distribution(b, opt.noise_floor));
  }
  throw InputError("bad instance '" + opt.instance + "' (expected random:N or digits:WxH)");
}

int cmd_bench(const BenchOptions& bopt, const RunOptions& ropt) {
  struct Task {
    std::uint64_t seed;
    std::string solver;
    std::string preset;
    double eta;
  };
  std::vector<Task> tasks;
  for (auto seed : bopt.seeds) {
    for (const auto& solver : bopt.solvers) {
      if (solver == "sinkhorn") {
        for (double eta : bopt.etas) tasks.push_back({seed, solver, "-", eta});
      } else {
        parse_variant(solver);
        for (const auto& preset : bopt.presets) {
          areaot::parse_preset(preset);
          tasks.push_back({seed, solver, preset, 0.0});
        }
      }
    }
  }
  for (auto seed : bopt.seeds) bench_instance(bopt, seed);

  json cfgj{{"instance", bopt.instance}, {"seeds", bopt.seeds},   {"solvers", bopt.solvers},
            {"presets", bopt.presets},   {"etas", bopt.etas},     {"epsilon", ropt.epsilon},
            {"relative_epsilon", ropt.relative_epsilon},           {"jobs", bopt.jobs},
            {"out", bopt.out}};
  std::cout << "config " << cfgj.dump() << std::endl;

  std::vector<std::string> rows(tasks.size());
  std::vector<std::string> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      const Task& t = tasks[k];
      try {
        const Problem p = bench_instance(bopt, t.seed);
        RunOptions o = ropt;
        o.eta = t.eta;
        const auto run = run_solver(p, o, t.solver, t.preset == "-" ? "provable" : t.preset);
        const auto& s = run.solution;
        const double eps = t.solver == "sinkhorn"
                               ? 0.0
                               : (ropt.relative_epsilon ? ropt.epsilon * p.d_max : ropt.epsilon);
        rows[k] = bopt.instance + ',' + std::to_string(t.seed) + ',' + std::to_string(p.n) + ',' +
                  t.solver + ',' + t.preset + ',' + areaot::format_double(t.eta) + ',' +
                  areaot::format_double(eps) + ',' +
                  (s.status == areaot::SolveStatus::kConverged ? "converged" : "iteration_limit") +
                  ',' + std::to_string(s.outer_iterations) + ',' + std::to_string(s.matvecs) +
                  ',' + areaot::format_double(s.gap) + ',' + areaot::format_double(s.objective);
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < std::max(1, bopt.jobs); ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (std::size_t k = 0; k < tasks.size(); ++k) {
    if (!errors[k].empty()) {
      std::cerr << "error: bench task " << k << " (" << tasks[k].solver << "): " << errors[k] << "\n";
      return kExitRuntime;
    }
  }
  std::string csv =
      "instance,seed,n,solver,preset,eta,epsilon,status,outer_iterations,matvecs,gap,objective\n";
  for (const auto& row : rows) csv += row + '\n';
  if (bopt.out.empty()) {
    std::cout << csv;
  } else {
    areaot::write_text_file(bopt.out, csv);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"areaot: entropy-free approximate optimal transport via area-convex dual extrapolation"};
  app.require_subcommand(1);

  InstanceOptions solve_inst;
  RunOptions solve_run;
  std::string trace_path, out_path;
  auto* solve = app.add_subcommand("solve", "Solve one instance");
  add_instance_options(solve, solve_inst);
  add_run_options(solve, solve_run, true);
  solve->add_option("--trace", trace_path, "Convergence trace CSV");
  solve->add_option("--out", out_path, "Solution JSON (plan written beside it)");

  BenchOptions bench_opt;
  RunOptions bench_run;
  auto* bench = app.add_subcommand("bench", "Run a solver matrix over seeds; emit one CSV");
  bench->add_option("--instance", bench_opt.instance, "random:N or digits:WxH")->capture_default_str();
  bench->add_option("--seeds", bench_opt.seeds, "Instance seeds")->delimiter(',');
  bench->add_option("--solvers", bench_opt.solvers, "dualex, mirrorprox, sinkhorn")->delimiter(',');
  bench->add_option("--presets", bench_opt.presets, "Presets for the extragradient solvers")->delimiter(',');
  bench->add_option("--etas", bench_opt.etas, "Sinkhorn eta values")->delimiter(',');
  bench->add_option("--noise-floor", bench_opt.noise_floor, "Noise floor for digits instances")
      ->capture_default_str();
  bench->add_option("--out", bench_opt.out, "Combined CSV (stdout if omitted)");
  bench->add_option("--jobs", bench_opt.jobs, "Concurrent runs")->capture_default_str();
  add_run_options(bench, bench_run, false);

  std::size_t gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_prefix, gen_image;
  auto* gen = app.add_subcommand("gen", "Write a random instance (or a synthetic stroke image)");
  gen->add_option("--n", gen_n, "Instance size");
  gen->add_option("--seed", gen_seed, "Seed")->capture_default_str();
  gen->add_option("--prefix", gen_prefix, "Writes PREFIX.cost.csv, PREFIX.r.csv, PREFIX.c.csv");
  gen->add_option("--stroke-image", gen_image, "Write a 28x28 synthetic stroke PGM to this path");

  InstanceOptions oracle_inst;
  std::string oracle_out;
  auto* oracle = app.add_subcommand("oracle", "Exact transportation simplex (n <= 16)");
  add_instance_options(oracle, oracle_inst);
  oracle->add_option("--out", oracle_out, "Optimal plan CSV");

  InstanceOptions audit_inst;
  audit_inst.n = 5;
  std::string audit_preset = "provable";
  std::optional<double> audit_entropy;
  double audit_kappa = 3.0;
  std::size_t audit_probes = 10000;
  std::uint64_t audit_seed = 1;
  auto* audit = app.add_subcommand("audit", "Probe area-convexity of a regularizer configuration");
  add_instance_options(audit, audit_inst);
  audit->add_option("--preset", audit_preset, "Preset supplying the entropy weight")
      ->check(CLI::IsMember({"provable", "reasonable", "optimized"}))
      ->capture_default_str();
  audit->add_option("--entropy-weight", audit_entropy, "Override the entropy weight");
  audit->add_option("--kappa", audit_kappa, "Area-convexity constant")->capture_default_str();
  audit->add_option("--probes", audit_probes, "Random probes")->capture_default_str();
  audit->add_option("--probe-seed", audit_seed, "Seed for the probes")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*solve) return cmd_solve(solve_inst, solve_run, trace_path, out_path);
    if (*bench) return cmd_bench(bench_opt, bench_run);
    if (*gen) {
      json cfgj{{"n", gen_n}, {"seed", gen_seed}, {"prefix", gen_prefix}, {"stroke_image", gen_image}};
      std::cout << "config " << cfgj.dump() << std::endl;
      if (gen_prefix.empty() && gen_image.empty()) throw InputError("give --prefix and/or --stroke-image");
      if (!gen_image.empty()) {
        areaot::write_text_file(gen_image, areaot::format_pgm(areaot::synthetic_stroke_image(gen_seed)));
      }
      if (!gen_prefix.empty()) {
        if (gen_n < 1) throw InputError("--n must be >= 1");
        const Problem p = areaot::gen_random_instance(gen_n, gen_seed);
        areaot::write_matrix_csv(gen_prefix + ".cost.csv", areaot::cost_matrix(p));
        areaot::write_vector_csv(gen_prefix + ".r.csv", p.r);
        areaot::write_vector_csv(gen_prefix + ".c.csv", p.c);
      }
      return kExitOk;
    }
    if (*oracle) {
      json desc;
      const Problem p = load_instance(oracle_inst, desc);
      std::cout << "config " << json{{"instance", desc}, {"out", oracle_out}}.dump() << std::endl;
      if (p.n > areaot::kOracleMaxN) {
        throw InputError("oracle: n = " + std::to_string(p.n) + " exceeds " +
                         std::to_string(areaot::kOracleMaxN));
      }
      const auto res = areaot::exact_oracle(p);
      std::cout << json{{"optimum", res.optimum}, {"pivots", res.pivots}}.dump() << std::endl;
      if (!oracle_out.empty()) areaot::write_matrix_csv(oracle_out, res.plan.X);
      return kExitOk;
    }
    if (*audit) {
      json desc;
      const Problem p = load_instance(audit_inst, desc);
      areaot::SolverConfig tmp;
      areaot::apply_preset(tmp, areaot::parse_preset(audit_preset), p.d_max);
      const double w = audit_entropy.value_or(tmp.entropy_weight);
      if (!(w > 0.0)) throw InputError("--entropy-weight must be positive");
      json cfgj{{"instance", desc}, {"entropy_weight", w}, {"kappa", audit_kappa},
                {"probes", audit_probes}, {"probe_seed", audit_seed}};
      std::cout << "config " << cfgj.dump() << std::endl;
      if (p.d_max == 0.0) throw InputError("audit: zero cost matrix has a degenerate regularizer");
      const auto rep = areaot::run_audit(p, areaot::make_regularizer_config(p, w), audit_kappa,
                                         audit_probes, audit_seed);
      const bool ok = rep.min_area_residual >= -1e-9 && rep.min_rsoc_form >= -1e-9;
      std::cout << json{{"probes", rep.probes},
                        {"min_area_residual", rep.min_area_residual},
                        {"min_rsoc_form", rep.min_rsoc_form},
                        {"violation_found", !ok}}
                       .dump()
                << std::endl;
      return kExitOk;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

#include "degenwave/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "degenwave/basis.hpp"
#include "degenwave/csv.hpp"
#include "degenwave/evolution.hpp"
#include "degenwave/observables.hpp"
#include "degenwave/parallel.hpp"
#include "degenwave/random_fields.hpp"
#include "degenwave/verify.hpp"

namespace degenwave {

namespace {

using nlohmann::json;

constexpr const char* kChiProfile = "chi(x)=exp(-1/(x*(2-x))) on (0,2)";
constexpr const char* kZetaProfile =
    "zeta(theta)=S((theta-2*delta0)/delta0)*S((2*pi-2*delta0-theta)/delta0), "
    "S(x)=sigma(x)/(sigma(x)+sigma(1-x)), sigma(x)=exp(-1/x)";

std::string tag_name(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s_%04zu", prefix, i);
  return buf;
}

json params_json(const ModelParams& p) {
  return json{{"alpha", p.alpha},   {"delta0", p.delta0}, {"T", p.t_final},
              {"n_theta", p.n_theta}, {"n_r", p.n_r},     {"n_t", p.n_t},
              {"k_max", p.k_max},   {"seed", p.seed}};
}

class MetaWriter {
 public:
  MetaWriter(const RunConfig& cfg, const std::string& command) : start_(clock::now()) {
    doc_["version"] = kVersion;
    doc_["command"] = command;
    doc_["config"] = params_json(cfg.params);
    doc_["config"]["out"] = cfg.out_base;
    doc_["profiles"] = {{"chi", kChiProfile}, {"zeta", kZetaProfile}};
    doc_["seed"] = cfg.params.seed;
  }

  json& extras() { return doc_["extras"]; }
  json& config() { return doc_["config"]; }

  void write(const std::string& base) {
    using sec = std::chrono::duration<double>;
    doc_["wall_clock_seconds"] = sec(clock::now() - start_).count();
    std::ofstream f(base + ".meta.json", std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + base + ".meta.json");
    f << doc_.dump(2) << "\n";
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_;
  json doc_;
};

int config_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitConfigError;
}

}  // namespace

void apply_config_json(const std::string& json_text, const std::string& command, RunConfig& cfg) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    if (doc.contains("alpha")) cfg.params.alpha = doc["alpha"].get<double>();
    if (doc.contains("delta0")) cfg.params.delta0 = doc["delta0"].get<double>();
    if (doc.contains("T")) cfg.params.t_final = doc["T"].get<double>();
    if (doc.contains("n_theta")) cfg.params.n_theta = doc["n_theta"].get<int>();
    if (doc.contains("n_r")) cfg.params.n_r = doc["n_r"].get<int>();
    if (doc.contains("n_t")) cfg.params.n_t = doc["n_t"].get<int>();
    if (doc.contains("k_max")) cfg.params.k_max = doc["k_max"].get<int>();
    if (doc.contains("seed")) cfg.params.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("out")) cfg.out_base = doc["out"].get<std::string>();
    if (doc.contains("threads")) cfg.threads = doc["threads"].get<int>();
    if (command == "observe" && doc.contains("observe")) {
      const json& sec = doc["observe"];
      if (sec.contains("eig_count")) cfg.eig_count = sec["eig_count"].get<int>();
      if (sec.contains("random_count")) cfg.random_count = sec["random_count"].get<int>();
    }
    if (command == "quasimode" && doc.contains("quasimode")) {
      const json& sec = doc["quasimode"];
      if (sec.contains("specs")) {
        cfg.quasimodes.clear();
        for (const auto& pair : sec["specs"])
          cfg.quasimodes.push_back({pair.at(0).get<int>(), pair.at(1).get<double>()});
      }
    }
    if (command == "audit" && doc.contains("audit")) {
      const json& sec = doc["audit"];
      if (sec.contains("modes")) {
        cfg.audit_modes.clear();
        for (const auto& pair : sec["modes"])
          cfg.audit_modes.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
      }
      if (sec.contains("ladder")) {
        cfg.audit_ladder.clear();
        for (const auto& pair : sec["ladder"])
          cfg.audit_ladder.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed config value: ") + e.what());
  }
}

int run_spectrum(const RunConfig& cfg) {
  try {
    const ModelParams params = validate_params(cfg.params);
    MetaWriter meta(cfg, "spectrum");
    const RadialGrid grid = build_radial_grid(params.n_r);
    const SpectralBasis basis = assemble_basis(params, grid);

    CsvWriter csv({"n", "k", "lambda", "boundary_slope"});
    for (int n = 0; n <= basis.modes(); ++n) {
      const auto& sys = basis.system(n);
      for (int k = 0; k < basis.radial_count(); ++k)
        csv.add_row({std::to_string(n), std::to_string(k + 1), format_full(sys.lambdas[k]),
                     format_full(sys.boundary_slopes[k])});
    }
    csv.write(cfg.out_base + ".csv");
    meta.extras()["near_collisions"] = basis.near_collisions().size();
    meta.write(cfg.out_base);
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    return config_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariantFailure;
  }
}

int run_observe(const RunConfig& cfg) {
  try {
    const ModelParams params = validate_params(cfg.params);
    if (cfg.eig_count < 0 || cfg.random_count < 0)
      throw std::invalid_argument("family sizes must be nonnegative");
    if (cfg.eig_count + cfg.random_count == 0)
      throw std::invalid_argument("observe needs a nonempty family");
    MetaWriter meta(cfg, "observe");
    const RadialGrid grid = build_radial_grid(params.n_r);
    const SpectralBasis basis = assemble_basis(params, grid);
    const auto family = observation_family(basis, cfg.eig_count, cfg.random_count, params.seed);
    const ConstantEstimate est = estimate_constant(family, params, basis);

    CsvWriter csv({"alpha", "T", "delta0", "tag", "E0", "O_Gamma", "O_omega", "threshold_term",
                   "ratio_mixed", "ratio_top_only", "below_threshold"});
    std::vector<std::string> excluded_tags;
    for (std::size_t i = 0; i < family.size(); ++i) {
      std::string tag = i < static_cast<std::size_t>(cfg.eig_count)
                            ? tag_name("eig", i)
                            : tag_name("rnd", i - cfg.eig_count);
      if (std::find(est.excluded.begin(), est.excluded.end(), i) != est.excluded.end()) {
        tag += "_excluded";
        excluded_tags.push_back(tag);
      }
      const ObservationReport& r = est.reports[i];
      csv.add_row({format_full(params.alpha), format_full(params.t_final),
                   format_full(params.delta0), tag, format_full(r.E0), format_full(r.O_Gamma),
                   format_full(r.O_omega), format_full(r.threshold_term),
                   format_full(r.ratio_mixed), format_full(r.ratio_top_only),
                   r.below_threshold ? "true" : "false"});
    }
    csv.add_row({format_full(params.alpha), format_full(params.t_final),
                 format_full(params.delta0), "C_emp", "0", "0", "0", "0",
                 format_full(est.c_emp), "0",
                 params.t_final > params.time_threshold() ? "false" : "true"});
    csv.write(cfg.out_base + ".csv");

    // empirical hidden-regularity constant over the eigenmode members
    double hidden = 0.0;
    for (int i = 0; i < cfg.eig_count && i < static_cast<int>(family.size()); ++i) {
      const Trajectory traj =
          sample_trajectory(family[i], nullptr, basis, params.t_final, params.n_t);
      hidden = std::max(hidden, hidden_regularity_ratio(traj, family[i], basis));
    }
    meta.extras()["C_emp"] = est.c_emp;
    meta.extras()["excluded"] = excluded_tags;
    meta.extras()["time_threshold"] = params.time_threshold();
    meta.extras()["hidden_regularity_constant"] = hidden;
    meta.extras()["near_collisions"] = basis.near_collisions().size();
    meta.config()["observe"] = {{"eig_count", cfg.eig_count}, {"random_count", cfg.random_count}};
    meta.write(cfg.out_base);
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    return config_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariantFailure;
  }
}

int run_quasimode(const RunConfig& cfg) {
  try {
    const ModelParams params = validate_params(cfg.params);
    std::vector<QuasimodeSpec> specs = cfg.quasimodes;
    if (specs.empty()) specs = {{4, 1.0 / 16}, {8, 1.0 / 16}, {16, 1.0 / 16}, {32, 1.0 / 16}};
    for (const auto& s : specs) validate_quasimode(s);
    MetaWriter meta(cfg, "quasimode");
    const RadialGrid grid = build_radial_grid(params.n_r);
    const SpectralBasis basis = assemble_basis(params, grid);
    const auto rows = quasimode_sweep(specs, params, basis);

    CsvWriter csv({"alpha", "T", "n", "eps", "mass", "mass_ok", "E0", "O_Gamma", "O_omega",
                   "threshold_term", "ratio_top_only", "ratio_mixed", "below_threshold"});
    for (const auto& row : rows) {
      csv.add_row({format_full(params.alpha), format_full(params.t_final),
                   std::to_string(row.spec.n), format_full(row.spec.eps), format_full(row.mass),
                   row.mass_ok ? "true" : "false", format_full(row.report.E0),
                   format_full(row.report.O_Gamma), format_full(row.report.O_omega),
                   format_full(row.report.threshold_term), format_full(row.report.ratio_top_only),
                   format_full(row.report.ratio_mixed),
                   row.report.below_threshold ? "true" : "false"});
    }
    csv.write(cfg.out_base + ".csv");
    meta.extras()["time_threshold"] = params.time_threshold();
    meta.write(cfg.out_base);
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    return config_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariantFailure;
  }
}

int run_audit(const RunConfig& cfg) {
  try {
    const ModelParams base_params = validate_params(cfg.params);
    std::vector<std::pair<int, int>> modes = cfg.audit_modes;
    if (modes.empty())
      for (int n : {2, 4, 8})
        for (int k : {1, 2, 4}) modes.emplace_back(n, k);
    std::vector<std::pair<int, int>> ladder = cfg.audit_ladder;
    if (ladder.empty()) ladder = {{128, 16}, {256, 32}, {512, 64}};

    int max_n = 0, max_k = 0;
    for (const auto& [n, k] : modes) {
      if (n < 0 || k < 1) throw std::invalid_argument("audit modes need n >= 0, k >= 1");
      max_n = std::max(max_n, n);
      max_k = std::max(max_k, k);
    }

    MetaWriter meta(cfg, "audit");
    CsvWriter csv({"alpha", "n", "k", "n_theta", "M", "B1", "B2", "B3", "residual_rel"});
    CsvWriter ids({"alpha", "n", "k", "n_theta", "M", "identity", "residual"});

    for (const auto& [m_cells, n_theta] : ladder) {
      if (n_theta < max_n)
        throw std::invalid_argument("audit ladder step retains fewer angular modes than requested");
      ModelParams params = base_params;
      params.n_r = m_cells;
      params.n_theta = n_theta;
      params.k_max = std::max(max_k, 1);
      params = validate_params(params);
      const RadialGrid grid = build_radial_grid(params.n_r);
      const SpectralBasis basis = assemble_basis(params, grid);
      for (const auto& [n, k] : modes) {
        InitialData init;
        init.phi0.assign(basis.count(), 0.0);
        init.phi1.assign(basis.count(), 0.0);
        init.phi0[basis.flat({AngularBranch::cos_branch, n, k - 1})] = 1.0;
        const Trajectory traj =
            sample_trajectory(init, nullptr, basis, params.t_final, params.n_t);
        const MultiplierAudit audit = multiplier_audit(traj, params, basis);
        csv.add_row({format_full(params.alpha), std::to_string(n), std::to_string(k),
                     std::to_string(n_theta), std::to_string(m_cells), format_full(audit.B1),
                     format_full(audit.B2), format_full(audit.B3),
                     format_full(audit.residual_rel)});
        const auto residuals = identity_audit(traj, params, basis);
        for (const auto& res : residuals)
          ids.add_row({format_full(params.alpha), std::to_string(n), std::to_string(k),
                       std::to_string(n_theta), std::to_string(m_cells), res.name,
                       format_full(res.relative)});
        ids.add_row({format_full(params.alpha), std::to_string(n), std::to_string(k),
                     std::to_string(n_theta), std::to_string(m_cells), "ibp_3.16",
                     format_full(audit.residual_ibp)});
        ids.add_row({format_full(params.alpha), std::to_string(n), std::to_string(k),
                     std::to_string(n_theta), std::to_string(m_cells), "energy_3.17",
                     format_full(audit.energy_residual)});
      }
    }
    csv.write(cfg.out_base + ".csv");
    ids.write(cfg.out_base + ".identities.csv");
    meta.write(cfg.out_base);
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    return config_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariantFailure;
  }
}

int run_verify(const RunConfig& cfg) {
  try {
    const ModelParams params = validate_params(cfg.params);
    const auto results = run_invariant_suite(params);
    bool all_ok = true;
    for (const auto& res : results) {
      all_ok = all_ok && res.passed;
      std::cout << (res.passed ? "[ ok ] " : "[FAIL] ") << res.name << "  worst=" << res.worst
                << " tol=" << res.tolerance << "  (" << res.detail << ")\n";
    }
    std::cout << (all_ok ? "verify: all checks passed" : "verify: FAILURES above") << "\n";
    return all_ok ? kExitOk : kExitInvariantFailure;
  } catch (const std::invalid_argument& e) {
    return config_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariantFailure;
  }
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"degenwave: spectral laboratory for a degenerate wave equation on T x (0,1)"};
  app.require_subcommand(1);

  struct FlagSet {
    std::string config_path, out;
    double alpha = 0, T = 0, delta0 = 0, eps = 0;
    std::uint64_t seed = 0;
    int n_r = 0, n_theta = 0, k_max = 0, n_t = 0, threads = -1;
    int eig_count = -1, rand_count = -1;
    std::vector<int> qm_n;
    std::vector<std::string> modes, ladder;
  } flags;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", flags.config_path, "JSON config file");
    cmd->add_option("--out", flags.out, "output base path (<out>.csv, <out>.meta.json)");
    cmd->add_option("--seed", flags.seed, "PRNG seed");
    cmd->add_option("--alpha", flags.alpha, "weight exponent in [1,2)");
    cmd->add_option("--T", flags.T, "final time");
    cmd->add_option("--delta0", flags.delta0, "strip half-parameter in (0,1/32)");
    cmd->add_option("--n-r", flags.n_r, "radial cells");
    cmd->add_option("--n-theta", flags.n_theta, "angular modes retained");
    cmd->add_option("--k-max", flags.k_max, "radial eigenpairs per mode");
    cmd->add_option("--n-t", flags.n_t, "time quadrature samples (even)");
    cmd->add_option("--threads", flags.threads, "parallelism cap (0 = auto)");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "dump the discrete spectrum");
  CLI::App* observe = app.add_subcommand("observe", "observability report over a family");
  CLI::App* quasimode = app.add_subcommand("quasimode", "quasimode sweep");
  CLI::App* audit = app.add_subcommand("audit", "multiplier and identity audits");
  CLI::App* verify = app.add_subcommand("verify", "built-in invariant suite");
  for (CLI::App* cmd : {spectrum, observe, quasimode, audit, verify}) add_common(cmd);
  observe->add_option("--eig-count", flags.eig_count, "eigenmode family members");
  observe->add_option("--rand-count", flags.rand_count, "random family members");
  quasimode->add_option("--n", flags.qm_n, "quasimode angular frequencies");
  quasimode->add_option("--eps", flags.eps, "quasimode radial scale in (0,1/4)");
  audit->add_option("--modes", flags.modes, "eigenmodes as n:k pairs");
  audit->add_option("--ladder", flags.ladder, "refinement ladder as M:n_theta pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  CLI::App* active = app.get_subcommands().front();
  const std::string command = active->get_name();

  RunConfig cfg;
  try {
    if (!flags.config_path.empty()) {
      std::ifstream f(flags.config_path, std::ios::binary);
      if (!f) throw std::invalid_argument("cannot read config file: " + flags.config_path);
      std::ostringstream ss;
      ss << f.rdbuf();
      apply_config_json(ss.str(), command, cfg);
    }
    // flags override config-file values
    auto given = [&](const char* name) {
      const CLI::Option* opt = active->get_option_no_throw(name);
      return opt != nullptr && opt->count() > 0;
    };
    auto set_if = [&](const char* name, auto&& apply) {
      if (given(name)) apply();
    };
    set_if("--out", [&] { cfg.out_base = flags.out; });
    set_if("--seed", [&] { cfg.params.seed = flags.seed; });
    set_if("--alpha", [&] { cfg.params.alpha = flags.alpha; });
    set_if("--T", [&] { cfg.params.t_final = flags.T; });
    set_if("--delta0", [&] { cfg.params.delta0 = flags.delta0; });
    set_if("--n-r", [&] { cfg.params.n_r = flags.n_r; });
    set_if("--n-theta", [&] { cfg.params.n_theta = flags.n_theta; });
    set_if("--k-max", [&] { cfg.params.k_max = flags.k_max; });
    set_if("--n-t", [&] { cfg.params.n_t = flags.n_t; });
    set_if("--threads", [&] { cfg.threads = flags.threads; });
    set_if("--eig-count", [&] { cfg.eig_count = flags.eig_count; });
    set_if("--rand-count", [&] { cfg.random_count = flags.rand_count; });
    if (given("--n")) {
      const double eps = given("--eps") ? flags.eps : 1.0 / 16;
      cfg.quasimodes.clear();
      for (int n : flags.qm_n) cfg.quasimodes.push_back({n, eps});
    }
    auto parse_pairs = [](const std::vector<std::string>& items, const char* what) {
      std::vector<std::pair<int, int>> out;
      for (const auto& item : items) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
          throw std::invalid_argument(std::string("expected a:b in ") + what);
        out.emplace_back(std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1)));
      }
      return out;
    };
    if (given("--modes")) cfg.audit_modes = parse_pairs(flags.modes, "--modes");
    if (given("--ladder")) cfg.audit_ladder = parse_pairs(flags.ladder, "--ladder");
  } catch (const std::exception& e) {
    return config_error(e.what());
  }

  if (cfg.threads >= 0) set_thread_cap(cfg.threads);

  if (command == "spectrum") return run_spectrum(cfg);
  if (command == "observe") return run_observe(cfg);
  if (command == "quasimode") return run_quasimode(cfg);
  if (command == "audit") return run_audit(cfg);
  return run_verify(cfg);
}

}  // namespace degenwave

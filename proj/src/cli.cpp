#include "inar/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "inar/digest.hpp"
#include "inar/error.hpp"
#include "inar/estimate.hpp"
#include "inar/inference.hpp"
#include "inar/io.hpp"

namespace inar::cli {

using nlohmann::json;
namespace fs = std::filesystem;

#ifndef INAR_VERSION
#define INAR_VERSION "0.0.0"
#endif

std::string_view tool_version() noexcept { return INAR_VERSION; }

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& constraint) {
  throw Error(ErrorCode::ValidationError, field + ": " + constraint);
}

double get_real(const json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_number()) invalid(key, "expected a number");
  return v.get<double>();
}

std::int64_t get_integer(const json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) invalid(key, "expected an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    invalid(key, "out of range");
  }
  return v.get<std::int64_t>();
}

std::size_t parse_component(const std::string& name) {
  if (name == "nu" || name == "mu_hat") return 0;
  for (std::string_view prefix : {"alpha", "beta"}) {
    if (name.starts_with(prefix) && name.size() > prefix.size()) {
      std::size_t k = 0;
      const auto digits = std::string_view(name).substr(prefix.size());
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
      if (ec == std::errc() && ptr == digits.data() + digits.size() && k >= 1) return k;
    }
  }
  invalid("components", "unknown component '" + name + "' (use nu, alpha1, alpha2, ...)");
}

std::vector<std::size_t> parse_component_list(const std::string& csv) {
  std::vector<std::size_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_component(item));
  }
  return out;
}

json normality_entry(const ComponentNormality& c) {
  if (c.report) {
    return json{{"jb_stat", c.report->jb_stat},
                {"jb_p", c.report->jb_p},
                {"sw_stat", c.report->sw_stat},
                {"sw_p", c.report->sw_p},
                {"sample_size", c.report->sample_size}};
  }
  return json{{"error", std::string(error_name(*c.error))}, {"message", c.error_message}};
}

void write_component_csvs(const fs::path& dir, const std::vector<ComponentNormality>& comps) {
  for (const auto& c : comps) {
    if (!c.report) continue;
    std::ostringstream qq;
    write_qq_csv(qq, c.qq);
    write_text_file(dir / ("qq_" + c.name + ".csv"), qq.str());
    std::ostringstream hist;
    write_hist_csv(hist, c.hist);
    write_text_file(dir / ("hist_" + c.name + ".csv"), hist.str());
  }
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("INAR_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

struct SimulateArgs {
  double nu = 0.0;
  std::string kernel = "none";
  std::int64_t T = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string out;
};

int run_simulate(const SimulateArgs& a, const fs::path& out_dir, std::ostream& out) {
  if (!(a.nu >= 0.0) || !std::isfinite(a.nu)) invalid("nu", "must be finite and >= 0");
  if (a.T < 1) invalid("T", "must be >= 1");
  const ModelParams params = parse_kernel_spec(a.nu, a.kernel);
  if (params.l1_norm() >= 1.0) invalid("kernel", "l1 norm must be below 1");

  RngStream rng(a.seed, a.stream);
  const CountPath path = simulate_path(params, a.T, rng);
  const fs::path file = a.out.empty() ? out_dir / "path.csv" : fs::path(a.out);
  write_path_csv(file, path);
  out << "wrote " << path.size() << " steps to " << file.string() << '\n';
  return 0;
}

struct EstimateArgs {
  std::string path;
  std::size_t p = kDefaultLagOrder;
  double level = 0.0;
  std::string out;
  std::string ci_out;
};

int run_estimate(const EstimateArgs& a, const fs::path& out_dir, std::ostream& out) {
  const std::string raw = read_text_file(a.path);
  std::istringstream in(raw);
  const CountPath path = read_path_csv(in);
  const bool want_ci = a.level != 0.0;
  if (want_ci && !(a.level > 0.0 && a.level < 1.0)) {
    throw Error(ErrorCode::InvalidLevel, "confidence level must lie in (0, 1)");
  }

  const DesignSystem sys = build_design(path, a.p);
  const ClsFit fit = fit_cls(sys);

  json inputs{{"path_digest", fnv1a64_hex(raw)}, {"p", a.p}, {"level", a.level}};
  json doc{{"tool_version", tool_version()},
           {"config_digest", fnv1a64_hex(inputs.dump())},
           {"base_seed", nullptr},
           {"mu_hat", fit.theta.mu},
           {"beta_hat", fit.theta.betas},
           {"p", a.p},
           {"T", sys.T},
           {"residual_norm", fit.residual_norm},
           {"rcond", fit.rcond}};

  if (want_ci) {
    const auto cov = sandwich_covariance(path, fit.theta, a.p);
    const auto cis = confidence_intervals(fit.theta, cov, sys.T, a.level);
    json rows = json::array();
    std::ostringstream csv;
    csv << "param,estimate,std_error,lower,upper\n";
    for (std::size_t j = 0; j < cis.size(); ++j) {
      const auto& ci = cis[j];
      const std::string name = component_name(j);
      rows.push_back({{"param", name},
                      {"estimate", ci.estimate},
                      {"std_error", ci.std_error},
                      {"lower", ci.lower},
                      {"upper", ci.upper}});
      csv << name << ',' << format_double(ci.estimate) << ',' << format_double(ci.std_error) << ','
          << format_double(ci.lower) << ',' << format_double(ci.upper) << '\n';
    }
    doc["level"] = a.level;
    doc["ci"] = std::move(rows);
    if (!a.ci_out.empty()) write_text_file(a.ci_out, csv.str());
  }

  const fs::path file = a.out.empty() ? out_dir / "estimate.json" : fs::path(a.out);
  write_text_file(file, dump(doc));
  out << "wrote " << file.string() << '\n';
  return 0;
}

struct McArgs {
  std::string config;
  std::int64_t seed = -1;
  bool no_samples = false;
};

int run_mc(const McArgs& a, const fs::path& out_dir, int threads, std::ostream& out) {
  RunConfig cfg = parse_config(read_text_file(a.config));
  if (a.seed >= 0) cfg.mc.base_seed = static_cast<std::uint64_t>(a.seed);
  cfg.mc.threads = threads;

  const McSummary summary = run_experiment(cfg.mc);
  std::vector<ComponentNormality> normality;
  if (summary.per_component_samples.rows() >= 8) normality = normality_suite(summary, cfg.components);

  write_text_file(out_dir / "summary.json", summary_json(cfg, summary, normality));
  if (!a.no_samples) {
    std::ostringstream samples;
    write_samples_csv(samples, summary.per_component_samples, summary.replication_ids);
    write_text_file(out_dir / "samples.csv", samples.str());
  }
  write_component_csvs(out_dir, normality);
  out << "wrote " << (out_dir / "summary.json").string() << " (" << summary.replication_ids.size()
      << " replications, " << summary.failures << " failed)\n";
  return 0;
}

struct NormalityArgs {
  std::string samples;
  std::string components = "nu,alpha1,alpha2";
  std::string out;
};

int run_normality(const NormalityArgs& a, const fs::path& out_dir, std::ostream& out) {
  const std::string raw = read_text_file(a.samples);
  std::istringstream in(raw);
  const SamplesTable table = read_samples_csv(in);
  const auto components = parse_component_list(a.components);

  McSummary wrapped;
  wrapped.per_component_samples = table.values;
  wrapped.replication_ids = table.rep_ids;
  const auto results = normality_suite(wrapped, components);

  json normality = json::object();
  for (const auto& c : results) normality[c.name] = normality_entry(c);
  json inputs{{"samples_digest", fnv1a64_hex(raw)}, {"components", a.components}};
  json doc{{"tool_version", tool_version()},
           {"config_digest", fnv1a64_hex(inputs.dump())},
           {"base_seed", nullptr},
           {"n_samples", table.values.rows()},
           {"normality", std::move(normality)}};

  const fs::path file = a.out.empty() ? out_dir / "normality.json" : fs::path(a.out);
  write_text_file(file, dump(doc));
  write_component_csvs(file.has_parent_path() ? file.parent_path() : out_dir, results);
  out << "wrote " << file.string() << '\n';
  return 0;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "at byte 0: config must be a JSON object");

  static const std::set<std::string> allowed = {"case", "nu", "kernel", "T", "p", "n_experiments",
                                                "seed", "cap_negatives", "components",
                                                "with_sandwich"};
  for (const auto& item : j.items()) {
    if (!allowed.contains(item.key())) {
      throw Error(ErrorCode::ParseError, "unknown key '" + item.key() + "'");
    }
  }
  for (const char* key : {"nu", "kernel", "T"}) {
    if (!j.contains(key)) invalid(key, "required");
  }

  RunConfig cfg;
  if (j.contains("case")) {
    if (!j["case"].is_string()) invalid("case", "expected a string");
    cfg.case_name = j["case"].get<std::string>();
  }

  const double nu = get_real(j, "nu");
  if (!(nu >= 0.0) || !std::isfinite(nu)) invalid("nu", "must be finite and >= 0");
  if (!j["kernel"].is_string()) invalid("kernel", "expected a string");
  cfg.kernel_spec = j["kernel"].get<std::string>();
  cfg.mc.params = parse_kernel_spec(nu, cfg.kernel_spec);
  if (cfg.mc.params.l1_norm() >= 1.0) invalid("kernel", "l1 norm must be below 1");

  cfg.mc.T = get_integer(j, "T");
  if (cfg.mc.T < 1) invalid("T", "must be >= 1");
  if (j.contains("p")) {
    const auto p = get_integer(j, "p");
    if (p < 0) invalid("p", "must be >= 0");
    cfg.mc.p = static_cast<std::size_t>(p);
  }
  if (static_cast<std::int64_t>(cfg.mc.p) > cfg.mc.T - 1) invalid("p", "must not exceed T - 1");
  if (j.contains("n_experiments")) {
    const auto n = get_integer(j, "n_experiments");
    if (n < 1) invalid("n_experiments", "must be >= 1");
    cfg.mc.n_experiments = static_cast<std::size_t>(n);
  }
  if (j.contains("seed")) {
    const auto& s = j["seed"];
    if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<std::int64_t>() < 0)) {
      invalid("seed", "expected a nonnegative integer");
    }
    cfg.mc.base_seed = s.get<std::uint64_t>();
  }
  for (const char* key : {"cap_negatives", "with_sandwich"}) {
    if (!j.contains(key)) continue;
    if (!j[key].is_boolean()) invalid(key, "expected true or false");
  }
  if (j.contains("cap_negatives")) cfg.mc.cap_negatives = j["cap_negatives"].get<bool>();
  if (j.contains("with_sandwich")) cfg.mc.with_sandwich = j["with_sandwich"].get<bool>();
  if (j.contains("components")) {
    if (!j["components"].is_array()) invalid("components", "expected an array of names");
    for (const auto& c : j["components"]) {
      if (!c.is_string()) invalid("components", "expected an array of names");
      const std::size_t idx = parse_component(c.get<std::string>());
      if (idx > cfg.mc.p) invalid("components", "component beyond lag order p");
      cfg.components.push_back(idx);
    }
  }
  return cfg;
}

std::string config_digest(const RunConfig& config) {
  json components = json::array();
  for (std::size_t c : config.components) components.push_back(component_name(c));
  const json canon{{"case", config.case_name},
                   {"nu", config.mc.params.nu},
                   {"kernel", config.kernel_spec},
                   {"T", config.mc.T},
                   {"p", config.mc.p},
                   {"n_experiments", config.mc.n_experiments},
                   {"seed", config.mc.base_seed},
                   {"cap_negatives", config.mc.cap_negatives},
                   {"with_sandwich", config.mc.with_sandwich},
                   {"components", components}};
  return fnv1a64_hex(canon.dump());
}

std::string summary_json(const RunConfig& config, const McSummary& summary,
                         const std::vector<ComponentNormality>& normality) {
  const auto to_array = [](const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
  };
  json norm = json::object();
  for (const auto& c : normality) norm[c.name] = normality_entry(c);

  json doc{{"tool_version", tool_version()},
           {"config_digest", config_digest(config)},
           {"case", config.case_name},
           {"kernel", config.kernel_spec},
           {"T", config.mc.T},
           {"p", config.mc.p},
           {"n_experiments", config.mc.n_experiments},
           {"base_seed", config.mc.base_seed},
           {"truth", to_array(summary.truth.to_vector())},
           {"mean_theta", to_array(summary.mean_theta)},
           {"mse", summary.mse},
           {"rel_err_theta", summary.rel_err_theta},
           {"rel_err_alpha", summary.rel_err_alpha},
           {"cap_negatives", summary.capped},
           {"failures", summary.failures},
           {"normality_samples", "raw"},
           {"normality", std::move(norm)}};
  if (summary.sigma_diag.size() > 0) {
    doc["mean_sigma_diag"] = to_array(summary.sigma_diag.colwise().mean().transpose());
  }
  return dump(doc);
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation, least-squares estimation and inference for cumulative INAR(inf) "
               "(discrete Hawkes) count processes",
               "inar"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  std::string out_dir = ".";
  int threads_flag = 0;
  app.add_option("--out-dir", out_dir, "Directory for default output files");
  app.add_option("--threads", threads_flag, "Worker threads (falls back to INAR_THREADS)");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate one path and write it as CSV");
  simulate->add_option("--nu", sim.nu, "Immigration rate")->required();
  simulate->add_option("--kernel", sim.kernel, "none | geometric:<r> | lags:[a1,...]");
  simulate->add_option("-T,--T", sim.T, "Path length")->required();
  simulate->add_option("--seed", sim.seed, "Base seed");
  simulate->add_option("--stream", sim.stream, "Stream id");
  simulate->add_option("--out", sim.out, "Output CSV (default <out-dir>/path.csv)");

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Least-squares estimate from a path CSV");
  estimate->add_option("--path", est.path, "Path CSV")->required();
  estimate->add_option("-p,--p", est.p, "Lag order");
  estimate->add_option("--level", est.level, "Confidence level for sandwich intervals");
  estimate->add_option("--out", est.out, "Output JSON (default <out-dir>/estimate.json)");
  estimate->add_option("--ci-out", est.ci_out, "Optional CSV table of intervals");

  McArgs mca;
  auto* mc = app.add_subcommand("mc", "Run a Monte Carlo study from a JSON config");
  mc->add_option("--config", mca.config, "Config JSON")->required();
  mc->add_option("--seed", mca.seed, "Override the config's base seed");
  mc->add_flag("--no-samples", mca.no_samples, "Skip samples.csv");

  NormalityArgs na;
  auto* normality = app.add_subcommand("normality", "Normality diagnostics for a samples CSV");
  normality->add_option("--samples", na.samples, "samples.csv from `mc`")->required();
  normality->add_option("--components", na.components, "Comma list, e.g. nu,alpha1,alpha2");
  normality->add_option("--out", na.out, "Output JSON (default <out-dir>/normality.json)");

  for (auto* sub : {simulate, estimate, mc, normality}) {
    sub->add_option("--out-dir", out_dir, "Directory for default output files");
    sub->add_option("--threads", threads_flag, "Worker threads (falls back to INAR_THREADS)");
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: UsageError: " << e.what() << '\n';
    return 2;
  }

  const int threads = resolve_threads(threads_flag);
  try {
    if (*simulate) return run_simulate(sim, out_dir, out);
    if (*estimate) return run_estimate(est, out_dir, out);
    if (*mc) return run_mc(mca, out_dir, threads, out);
    if (*normality) return run_normality(na, out_dir, out);
  } catch (const Error& e) {
    err << "error: " << error_name(e.code()) << ": " << e.what() << '\n';
    const bool usage = e.code() == ErrorCode::ParseError || e.code() == ErrorCode::ValidationError;
    return usage ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: Internal: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace inar::cli

#include "hermspec/config.hpp"

#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "hermspec/errors.hpp"

namespace hermspec {

using nlohmann::json;

namespace {

json kernel_to_json(const KernelSpec& k) {
  json j;
  switch (k.variant) {
    case KernelSpec::Variant::IsotropicMaxwell: j["variant"] = "isotropic_maxwell"; break;
    case KernelSpec::Variant::VHS: j["variant"] = "vhs"; break;
    case KernelSpec::Variant::IPL: j["variant"] = "ipl"; break;
  }
  j["strength"] = k.strength;
  j["exponent"] = k.exponent;
  j["eta"] = k.eta;
  return j;
}

KernelSpec kernel_from_json(const json& j) {
  const std::string variant = j.at("variant").get<std::string>();
  const double strength = j.value("strength", 1.0);
  if (variant == "isotropic_maxwell") return KernelSpec::isotropic_maxwell(strength);
  if (variant == "vhs") return KernelSpec::vhs(j.value("exponent", 0.0), strength);
  if (variant == "ipl") return KernelSpec::ipl(j.value("eta", 10.0), strength);
  throw ConfigError("unknown kernel variant: " + variant);
}

json adapt_to_json(const AdaptiveParams& a) {
  return json{{"N_min", a.N_min},     {"N_max", a.N_max},     {"delta_N", a.delta_N},
              {"eta0_p", a.eta0_p},   {"etal_p", a.etal_p},   {"etah_p", a.etah_p},
              {"F_l0", a.F_l0},       {"F_h0", a.F_h0},       {"etal_s", a.etal_s},
              {"etah_s", a.etah_s},   {"q", a.q},             {"beta_min", a.beta_min},
              {"beta_max", a.beta_max}};
}

AdaptiveParams adapt_from_json(const json& j) {
  AdaptiveParams a;
  a.N_min = j.value("N_min", a.N_min);
  a.N_max = j.value("N_max", a.N_max);
  a.delta_N = j.value("delta_N", a.delta_N);
  a.eta0_p = j.value("eta0_p", a.eta0_p);
  a.etal_p = j.value("etal_p", a.etal_p);
  a.etah_p = j.value("etah_p", a.etah_p);
  a.F_l0 = j.value("F_l0", a.F_l0);
  a.F_h0 = j.value("F_h0", a.F_h0);
  a.etal_s = j.value("etal_s", a.etal_s);
  a.etah_s = j.value("etah_s", a.etah_s);
  a.q = j.value("q", a.q);
  a.beta_min = j.value("beta_min", a.beta_min);
  a.beta_max = j.value("beta_max", a.beta_max);
  return a;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["scenario"] = c.scenario;
  j["kernel"] = kernel_to_json(c.kernel);
  j["kernel_overridden"] = c.kernel_overridden;
  j["N"] = c.N;
  j["N0"] = c.N0;
  j["M"] = c.M;
  j["t_end"] = c.t_end;
  j["dt"] = c.dt;
  j["cfl"] = c.cfl;
  j["dt_max"] = c.dt_max;
  j["beta0"] = c.beta0;
  j["switches"] = c.switches;
  j["adaptivity"] = adapt_to_json(c.adapt);
  j["report_every"] = c.report_every;
  j["error_every"] = c.error_every;
  j["threads"] = c.threads;
  j["seed"] = c.seed;
  j["tensor_cache_dir"] = c.tensor_cache_dir;
  j["output_dir"] = c.output_dir;
  j["precompute_if_missing"] = c.precompute_if_missing;
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig c = default_config(j.value("scenario", std::string("bkw")));
  if (j.contains("kernel")) {
    KernelSpec parsed = kernel_from_json(j["kernel"]);
    const bool explicit_flag = j.value("kernel_overridden", true);
    if (explicit_flag) {
      c.kernel = parsed;
      c.kernel_overridden = true;
    }
  }
  c.N = j.value("N", c.N);
  c.N0 = j.value("N0", c.N0);
  c.M = j.value("M", c.M);
  c.t_end = j.value("t_end", c.t_end);
  c.dt = j.value("dt", c.dt);
  c.cfl = j.value("cfl", c.cfl);
  c.dt_max = j.value("dt_max", c.dt_max);
  c.beta0 = j.value("beta0", c.beta0);
  c.switches = j.value("switches", c.switches);
  if (j.contains("adaptivity")) c.adapt = adapt_from_json(j["adaptivity"]);
  c.report_every = j.value("report_every", c.report_every);
  c.error_every = j.value("error_every", c.error_every);
  c.threads = j.value("threads", c.threads);
  c.seed = j.value("seed", c.seed);
  c.tensor_cache_dir = j.value("tensor_cache_dir", c.tensor_cache_dir);
  c.output_dir = j.value("output_dir", c.output_dir);
  c.precompute_if_missing = j.value("precompute_if_missing", c.precompute_if_missing);
  return c;
}

}  // namespace

RunConfig default_config(const std::string& scenario_name) {
  const Scenario s = scenario_by_name(scenario_name);
  RunConfig c;
  c.scenario = s.name;
  c.kernel = s.kernel;
  c.kernel_overridden = false;
  c.N = s.default_N;
  c.N0 = s.default_N0;
  c.M = s.default_M;
  c.t_end = s.default_t_end;
  c.dt = s.default_dt;
  c.cfl = s.default_cfl;
  c.beta0 = 0.0;
  return c;
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  RunConfig c = config_from_json(j);
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& config) { return config_to_json(config).dump(2); }

void apply_override(RunConfig& config, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override must look like key.path=value");
  const std::string path = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);

  json j = config_to_json(config);
  json* node = &j;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
    if (key.empty()) throw ConfigError("override has an empty path segment: " + assignment);
    if (dot == std::string::npos) {
      json parsed;
      try {
        parsed = json::parse(value);
      } catch (const json::parse_error&) {
        parsed = value;  // plain strings need no quotes
      }
      (*node)[key] = parsed;
      break;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
  if (path == "kernel" || path.rfind("kernel.", 0) == 0) j["kernel_overridden"] = true;
  RunConfig next = config_from_json(j);
  next.validate();
  config = next;
}

Scenario RunConfig::make_scenario() const {
  Scenario s = scenario_by_name(scenario);
  if (kernel_overridden) s.kernel = kernel;
  return s;
}

int RunConfig::effective_N0() const {
  return N0 > 0 ? N0 : scenario_by_name(scenario).default_N0;
}

SolverOptions RunConfig::make_solver_options() const {
  const Scenario s = scenario_by_name(scenario);
  SolverOptions o;
  o.N = N > 0 ? N : s.default_N;
  o.M = M > 0 ? M : s.default_M;
  o.switches = switches_from_string(switches);
  o.adapt = adapt;
  o.t_end = t_end > 0.0 ? t_end : s.default_t_end;
  o.dt = dt > 0.0 ? dt : s.default_dt;
  o.cfl = cfl;
  o.dt_max = dt_max;
  o.beta0 = beta0;
  o.report_every = report_every;
  o.error_every = error_every;
  o.threads = threads;
  return o;
}

void RunConfig::validate() const {
  (void)scenario_by_name(scenario);
  (void)switches_from_string(switches);
  adapt.validate();
  const int n0 = effective_N0();
  if (n0 < 0 || n0 > 8) throw ConfigError("config: N0 must be in [0,8]");
  const Scenario s = scenario_by_name(scenario);
  const int m = M > 0 ? M : s.default_M;
  if (s.D > 0 && (m < 2 || m % 2 != 0)) throw ConfigError("config: M must be even");
  const double te = t_end > 0.0 ? t_end : s.default_t_end;
  if (!(te > 0.0)) throw ConfigError("config: t_end must be positive");
  if (threads < 1) throw ConfigError("config: threads must be >= 1");
  if (!tensor_cache_dir.empty()) {
    const std::filesystem::path p(tensor_cache_dir);
    if (p.has_parent_path() && !std::filesystem::exists(p.parent_path()))
      throw ConfigError("config: tensor_cache_dir parent does not exist: " + p.parent_path().string());
  }
  if (!output_dir.empty()) {
    const std::filesystem::path p(output_dir);
    if (p.has_parent_path() && !std::filesystem::exists(p.parent_path()))
      throw ConfigError("config: output_dir parent does not exist: " + p.parent_path().string());
  }
}

// ---------------------------------------------------------------------------
// Report and snapshot files
// ---------------------------------------------------------------------------

void write_report_csv(const RunReport& report, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path.string());
  os << "t,dt,beta,N,indicator,l2_error,rho_err,u_err,theta_err,sigma_err,q_err\n";
  os << std::setprecision(17);
  for (const ReportRow& r : report.rows) {
    os << r.t << ',' << r.dt << ',' << r.beta << ',' << r.N << ',' << r.indicator << ','
       << r.l2_error << ',' << r.rho_err << ',' << r.u_err << ',' << r.theta_err << ','
       << r.sigma_err << ',' << r.q_err << '\n';
  }
  if (!os) throw IoError("write failed for " + path.string());
}

void write_adjustments_csv(const std::vector<AdjustmentRecord>& log,
                           const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path.string());
  os << "t,kind,old,new,indicator_before,indicator_after\n";
  os << std::setprecision(17);
  for (const AdjustmentRecord& r : log)
    os << r.t << ',' << r.kind << ',' << r.old_value << ',' << r.new_value << ','
       << r.indicator_before << ',' << r.indicator_after << '\n';
}

void write_snapshot_json(const SpatialField& field, const std::filesystem::path& path) {
  json j;
  j["basis"] = {{"N", field.spec.N}, {"beta", field.spec.beta}, {"zeta", field.spec.zeta}};
  j["domain"] = {{"D", field.D}, {"M", field.M}, {"L", field.L}};
  json coeffs = json::object();
  for_each_index(field.spec.N, [&](std::int64_t r, int k1, int k2, int k3) {
    const std::string key =
        std::to_string(k1) + "," + std::to_string(k2) + "," + std::to_string(k3);
    json values = json::array();
    for (std::int64_t p = 0; p < field.points(); ++p) values.push_back(field.at(p)[r]);
    coeffs[key] = std::move(values);
  });
  j["coeffs"] = std::move(coeffs);
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path.string());
  os << j.dump(1) << '\n';
}

ParsedReport read_report_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open report " + path.string());
  ParsedReport rep;
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty report " + path.string());
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) rep.header.push_back(cell);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    if (row.size() != rep.header.size()) throw IoError("ragged report row in " + path.string());
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

namespace {

std::filesystem::path cache_path(const RunConfig& config) {
  return std::filesystem::path(config.tensor_cache_dir) /
         tensor_cache_name(config.kernel_overridden ? config.kernel
                                                    : config.make_scenario().kernel,
                           config.effective_N0());
}

CollisionTensor obtain_tensor(const RunConfig& config, std::ostream& out, bool allow_assemble) {
  const std::filesystem::path path = cache_path(config);
  if (std::filesystem::exists(path)) {
    CollisionTensor t = load_tensor(path);
    out << "tensor cache verified: " << path.string() << " (nu = " << t.nu << ")\n";
    return t;
  }
  if (!allow_assemble)
    throw ConfigError("tensor cache required but missing: " + path.string() +
                      " (run the precompute command first)");
  const KernelSpec kernel =
      config.kernel_overridden ? config.kernel : config.make_scenario().kernel;
  CollisionTensor t = assemble_tensor(kernel, config.effective_N0(), {}, config.threads);
  std::filesystem::create_directories(path.parent_path());
  save_tensor(t, path);
  out << "tensor assembled: " << path.string() << "\n  conservation residual = "
      << t.conservation_residual << "\n  nu = " << t.nu << "\n";
  return t;
}

}  // namespace

std::filesystem::path cmd_precompute(const RunConfig& config, std::ostream& out) {
  config.validate();
  std::filesystem::create_directories(config.tensor_cache_dir);
  const CollisionTensor t = obtain_tensor(config, out, true);
  out << "conservation residual: " << t.conservation_residual << "\nnu: " << t.nu << "\n";
  return cache_path(config);
}

std::filesystem::path cmd_run(const RunConfig& config, std::ostream& out) {
  config.validate();
  const Scenario scenario = config.make_scenario();
  const CollisionTensor tensor = obtain_tensor(config, out, config.precompute_if_missing);
  const SolverOptions options = config.make_solver_options();

  std::filesystem::create_directories(config.output_dir);
  const std::filesystem::path dir(config.output_dir);
  {
    std::ofstream os(dir / "config.json");
    os << serialize_config(config) << '\n';
  }

  RunReport report;
  try {
    run(scenario, tensor, options, report);
  } catch (...) {
    // Preserve whatever was recorded before the failure.
    write_report_csv(report, dir / "report.csv");
    write_adjustments_csv(report.adjustments, dir / "adjustments.csv");
    throw;
  }
  write_report_csv(report, dir / "report.csv");
  write_adjustments_csv(report.adjustments, dir / "adjustments.csv");
  write_snapshot_json(report.final_field, dir / "snapshot.json");

  const ReportRow& last = report.rows.back();
  out << "run finished: t = " << last.t << ", steps = " << report.steps
      << ", beta = " << last.beta << ", N = " << last.N << ", indicator = " << last.indicator;
  if (std::isfinite(last.l2_error)) out << ", l2_error = " << last.l2_error;
  out << "\nwall seconds: " << report.wall_seconds << "\noutputs in " << dir.string() << "\n";
  return dir;
}

void cmd_compare(const std::filesystem::path& report_a, const std::filesystem::path& report_b,
                 std::ostream& out) {
  const ParsedReport a = read_report_csv(report_a);
  const ParsedReport b = read_report_csv(report_b);
  if (a.header != b.header) throw ConfigError("compare: reports have different columns");
  if (a.rows.size() != b.rows.size())
    throw ConfigError("compare: reports have different numbers of rows");
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    if (a.rows[i][0] != b.rows[i][0])
      throw ConfigError("compare: time grids differ at row " + std::to_string(i) +
                        " (interpolation is not applied)");

  // Ratio columns for every error-like quantity.
  const std::vector<std::string> cols = {"indicator", "l2_error", "rho_err",
                                         "u_err",     "theta_err", "sigma_err", "q_err"};
  std::vector<std::size_t> idx;
  for (const std::string& c : cols)
    for (std::size_t k = 0; k < a.header.size(); ++k)
      if (a.header[k] == c) idx.push_back(k);

  out << "t";
  for (std::size_t k : idx) out << ",ratio_" << a.header[k];
  out << '\n' << std::setprecision(6);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    out << a.rows[i][0];
    for (std::size_t k : idx) {
      const double ra = a.rows[i][k], rb = b.rows[i][k];
      out << ',';
      if (std::isfinite(ra) && std::isfinite(rb) && rb != 0.0)
        out << ra / rb;
      else
        out << "nan";
    }
    out << '\n';
  }
  const std::size_t lastrow = a.rows.size() - 1;
  out << "final-time summary (a vs b) at t = " << a.rows[lastrow][0] << ":\n";
  for (std::size_t k : idx)
    out << "  " << a.header[k] << ": " << a.rows[lastrow][k] << " vs " << b.rows[lastrow][k] << '\n';
}

}  // namespace hermspec

// pluri: command-line front end for the pluripotential verification library.
//
// Subcommands:
//   pluri azukawa eval        evaluate A_{Omega,w}(X) for a domain/family
//   pluri indicatrix volume   indicatrix volume by quadrature and/or MC
//   pluri indicatrix radii    CSV of direction-wise boundary radii e^{-A}
//   pluri check <name>        run one verification check (thm13 thm14 thm15
//                             claim21 case2 lemma54 thm53)
//   pluri report all          run every check and write a report bundle
//
// Exit codes: 0 all asserted checks pass, 1 a check failed (witness printed),
// 2 invalid configuration or arguments.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pluri/catalog.hpp"
#include "pluri/checks.hpp"
#include "pluri/report_io.hpp"

namespace {

using nlohmann::json;
using namespace pluri;

struct CliState {
  CheckOptions opts;
  std::string out;
  std::string format = "json";
  std::string family_arg;       // path to a family JSON file
  std::optional<json> family_inline;  // family document from --config
  std::string ball_arg;         // "0.5" or "r=0.5"
  double ball_r = -1.0;
  std::string gauge_arg;
  std::string x_arg;
  std::string t_arg = "0,0";
  double halfwidth = 0.0;
  std::string method = "spherical";
  bool with_limit = false;

  void resolve_ball() {
    if (ball_arg.empty()) return;
    std::string s = ball_arg;
    if (s.rfind("r=", 0) == 0) s = s.substr(2);
    try {
      ball_r = std::stod(s);
    } catch (const std::exception&) {
      fail(ErrorKind::config, "--ball: expected a pole radius like 0.5 or r=0.5, got \"" + ball_arg + "\"");
    }
    if (!(ball_r >= 0.0 && ball_r < 1.0)) fail(ErrorKind::config, "--ball pole radius must lie in [0, 1)");
  }
};

Complex parse_complex(const std::string& s, const std::string& what) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return Complex{std::stod(s), 0.0};
    return Complex{std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    fail(ErrorKind::config, what + ": expected \"re,im\", got \"" + s + "\"");
  }
}

CPoint parse_point(const std::string& s, const std::string& what) {
  CPoint p;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto semi = s.find(';', pos);
    const std::string part = s.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
    if (!part.empty()) p.push_back(parse_complex(part, what));
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  if (p.empty()) fail(ErrorKind::config, what + ": expected \"re,im;re,im;...\", got \"" + s + "\"");
  return p;
}

std::string default_out_dir() {
  if (const char* env = std::getenv("PLURI_OUT_DIR")) return env;
  return "pluri-out";
}

DomainFamily load_family(const CliState& st, const std::string& fallback_catalog_name) {
  if (st.family_inline) return DomainFamily::from_json(*st.family_inline);
  if (!st.family_arg.empty()) {
    // catalog names work as well as paths
    for (const std::string& name : catalog::names())
      if (st.family_arg == name) return catalog::by_name(name);
    return DomainFamily::from_json(load_json_file(st.family_arg));
  }
  return catalog::by_name(fallback_catalog_name);
}

void emit(const CliState& st, const std::string& content, const std::string& kind) {
  if (st.out.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
  } else {
    atomic_write_text(st.out, content);
    std::cout << kind << " written to " << st.out << "\n";
  }
}

// ---- config file -----------------------------------------------------------

template <class T>
T config_field(const json& j, const std::string& path, const T& fallback) {
  const json* cur = &j;
  std::size_t pos = 0;
  std::string walked;
  while (pos <= path.size()) {
    const auto dot = path.find('.', pos);
    const std::string key = path.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    walked += (walked.empty() ? "" : ".") + key;
    if (!cur->is_object()) fail(ErrorKind::config, walked + ": expected an object");
    if (!cur->contains(key)) return fallback;
    cur = &cur->at(key);
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  try {
    return cur->get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::config, path + ": wrong type, got " + cur->dump());
  }
}

void apply_config(CliState& st, const std::string& path, std::string& command_from_config) {
  const json cfg = load_json_file(path);
  if (!cfg.is_object()) fail(ErrorKind::config, path + ": top level must be a JSON object");
  static const std::vector<std::string> known{"command", "family", "grids", "mc", "tolerances", "output"};
  for (const auto& [key, _] : cfg.items()) {
    bool ok = false;
    for (const std::string& k : known) ok = ok || k == key;
    if (!ok) fail(ErrorKind::config, path + ": unknown top-level field \"" + key + "\"");
  }
  command_from_config = config_field<std::string>(cfg, "command", "");
  if (cfg.contains("family")) {
    if (cfg["family"].is_string())
      st.family_arg = cfg["family"].get<std::string>();
    else
      st.family_inline = cfg["family"];
  }
  st.opts.nodes = config_field<int>(cfg, "grids.sphere_nodes", st.opts.nodes);
  st.opts.t_mesh = config_field<int>(cfg, "grids.t_mesh", st.opts.t_mesh);
  st.opts.circle_nodes = config_field<int>(cfg, "grids.circle_nodes", st.opts.circle_nodes);
  st.opts.lines = config_field<int>(cfg, "grids.lines", st.opts.lines);
  st.opts.bases = config_field<int>(cfg, "grids.bases", st.opts.bases);
  st.opts.samples = config_field<long long>(cfg, "mc.samples", st.opts.samples);
  st.opts.seed = config_field<std::uint64_t>(cfg, "mc.seed", st.opts.seed);
  st.opts.chunk = config_field<long long>(cfg, "mc.chunk", st.opts.chunk);
  st.opts.tol = config_field<double>(cfg, "tolerances.psh", st.opts.tol);
  st.out = config_field<std::string>(cfg, "output.path", st.out);
  st.format = config_field<std::string>(cfg, "output.format", st.format);
  if (st.format != "json" && st.format != "csv")
    fail(ErrorKind::config, "output.format must be \"csv\" or \"json\"");
}

// ---- subcommand bodies ------------------------------------------------------

AzukawaEvaluator resolve_evaluator(const CliState& st, Complex t) {
  if (st.ball_r >= 0.0)
    return AzukawaEvaluator::ball_closed_form(1.0, CPoint{Complex{st.ball_r, 0.0}, Complex{0.0, 0.0}});
  if (!st.gauge_arg.empty())
    return AzukawaEvaluator::balanced_closed_form(MinkowskiGauge::from_json(load_json_file(st.gauge_arg)));
  return load_family(st, "hartogs").azukawa_at(t);
}

int run_azukawa_eval(const CliState& st) {
  if (st.x_arg.empty()) fail(ErrorKind::config, "azukawa eval needs --X \"re,im;re,im;...\"");
  const Complex t = parse_complex(st.t_arg, "--t");
  const CPoint X = parse_point(st.x_arg, "--X");
  const AzukawaEvaluator A = resolve_evaluator(st, t);
  json out;
  out["X"] = st.x_arg;
  out["value"] = A(X);
  if (st.with_limit) {
    GreenEvaluator g = st.ball_r >= 0.0
                           ? GreenEvaluator::ball(1.0, CPoint{Complex{st.ball_r, 0.0}, Complex{0.0, 0.0}})
                           : (!st.gauge_arg.empty()
                                  ? GreenEvaluator::balanced(MinkowskiGauge::from_json(load_json_file(st.gauge_arg)))
                                  : load_family(st, "hartogs").green_at(t));
    const LimitEstimate lim = azukawa_limit(g, X, LambdaSchedule{});
    out["limit_estimate"] = lim.estimate;
    out["limit_spread"] = lim.spread;
  }
  emit(st, to_pretty_json(out), "result");
  return 0;
}

int run_indicatrix_volume(const CliState& st) {
  const Complex t = parse_complex(st.t_arg, "--t");
  const AzukawaEvaluator A = resolve_evaluator(st, t);
  std::vector<VolumeEstimate> estimates;
  if (st.method == "spherical" || st.method == "both")
    estimates.push_back(indicatrix_volume_spherical(A, SphericalGrid::for_dimension(A.dimension(), st.opts.nodes,
                                                                                    st.opts.seed)));
  if (st.method == "mc" || st.method == "both") {
    double hw = st.halfwidth;
    if (hw <= 0.0) {
      // pad the coarse-scan radius so the containment pre-check has margin
      const SphericalGrid coarse = SphericalGrid::for_dimension(A.dimension(), 16, st.opts.seed);
      hw = 1.1 * std::exp(-coarse.extremum([&](const CPoint& x) { return A(x); }, false));
    }
    estimates.push_back(indicatrix_volume_mc(A, hw, st.opts.samples, st.opts.seed));
  }
  if (estimates.empty()) fail(ErrorKind::config, "--method must be spherical, mc, or both");

  if (st.format == "csv") {
    std::vector<std::vector<double>> rows;
    for (const VolumeEstimate& e : estimates)
      rows.push_back({e.method == VolumeEstimate::Method::spherical ? 0.0 : 1.0, e.value, e.error,
                      static_cast<double>(e.count)});
    emit(st, to_csv({"method_spherical0_mc1", "value", "error", "count"}, rows), "csv");
  } else {
    json out = json::array();
    for (const VolumeEstimate& e : estimates) out.push_back(e.to_json());
    emit(st, to_pretty_json(out), "result");
  }
  return 0;
}

int run_indicatrix_radii(const CliState& st) {
  const Complex t = parse_complex(st.t_arg, "--t");
  const AzukawaEvaluator A = resolve_evaluator(st, t);
  const std::vector<DirectionalRadius> rows = boundary_radii(A, st.opts.nodes);
  std::vector<std::vector<double>> csv;
  csv.reserve(rows.size());
  for (const DirectionalRadius& r : rows) {
    std::vector<double> row = r.angles;
    row.push_back(r.radius);
    csv.push_back(std::move(row));
  }
  emit(st, to_csv(A.dimension() == 1 ? std::vector<std::string>{"angle", "radius"}
                                     : std::vector<std::string>{"theta", "xi1", "xi2", "radius"},
                  csv),
       "csv");
  return 0;
}

void print_check(const CheckReport& rep) {
  std::cout << "[" << rep.name << "] " << rep.statement << "\n";
  std::cout << "  verdict: " << (rep.pass ? "PASS" : "FAIL") << "\n";
  if (!rep.pass) {
    // surface the witness (or the full details) of the failure
    if (rep.details.contains("line_report"))
      std::cout << "  witness: " << rep.details["line_report"]["witness"].dump() << "\n";
    else if (rep.details.contains("grid_report"))
      std::cout << "  witness: " << rep.details["grid_report"]["witness"].dump() << "\n";
    else
      std::cout << "  details: " << rep.details.dump() << "\n";
  }
}

std::vector<CheckReport> run_named_check(const std::string& name, const CliState& st) {
  std::vector<CheckReport> reports;
  const bool has_family = st.family_inline.has_value() || !st.family_arg.empty();
  if (name == "thm13") {
    const DomainFamily f = load_family(st, "hartogs");
    reports.push_back(check_thm13(f, st.opts));
  } else if (name == "thm14") {
    if (has_family) {
      reports.push_back(check_thm14(load_family(st, ""), st.opts));
    } else {
      for (const auto& [fname, family] : catalog::balanced_five()) {
        CheckReport r = check_thm14(family, st.opts);
        r.name = "thm14[" + fname + "]";
        reports.push_back(std::move(r));
      }
    }
  } else if (name == "thm15") {
    reports.push_back(check_thm15(load_family(st, "hartogs"), st.opts));
  } else if (name == "claim21") {
    reports.push_back(check_claim21(st.opts));
  } else if (name == "case2") {
    if (has_family) {
      reports.push_back(check_case2(load_family(st, ""), st.opts));
    } else {
      for (const auto& [fname, family] : catalog::balanced_five()) {
        CheckReport r = check_case2(family, st.opts, fname);
        r.name = "case2[" + fname + "]";
        reports.push_back(std::move(r));
      }
    }
  } else if (name == "lemma54") {
    reports.push_back(check_lemma54(st.opts));
  } else if (name == "thm53") {
    reports.push_back(check_thm53(st.opts));
  } else {
    fail(ErrorKind::config,
         "unknown check \"" + name + "\" (expected thm13 thm14 thm15 claim21 case2 lemma54 thm53)");
  }
  return reports;
}

int write_reports(const std::vector<CheckReport>& reports, const CliState& st, bool bundle_dir) {
  bool all_pass = true;
  json jreports = json::array();
  for (const CheckReport& r : reports) {
    print_check(r);
    jreports.push_back(r.to_json());
    all_pass = all_pass && r.pass;
  }
  json out;
  out["checks"] = std::move(jreports);
  out["pass"] = all_pass;
  out["seed"] = st.opts.seed;

  if (bundle_dir) {
    const std::filesystem::path dir = st.out.empty() ? default_out_dir() : st.out;
    atomic_write_text(dir / "report.json", to_pretty_json(out));
    for (const CheckReport& r : reports)
      for (const CheckArtifact& a : r.artifacts) atomic_write_text(dir / a.filename, a.content);
    std::cout << "report bundle written to " << dir.string() << "\n";
  } else if (!st.out.empty()) {
    if (st.format == "csv" && reports.size() == 1 && !reports[0].artifacts.empty()) {
      atomic_write_text(st.out, reports[0].artifacts[0].content);
    } else {
      atomic_write_text(st.out, to_pretty_json(out));
    }
    std::cout << "report written to " << st.out << "\n";
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CliState st;
  std::string config_path;
  std::string check_name;

  CLI::App app{"pluripotential verification toolkit: Green functions, Azukawa pseudometrics,\n"
               "indicatrix volumes, and subharmonic-variation checks on closed-form domain families"};
  app.require_subcommand(0, 1);
  app.add_option("--config", config_path, "experiment configuration file (JSON)");

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", st.opts.seed, "RNG seed (every stochastic routine derives from it)");
    cmd->add_option("--samples", st.opts.samples, "Monte Carlo sample budget");
    cmd->add_option("--nodes", st.opts.nodes, "quadrature resolution per axis");
    cmd->add_option("--tol", st.opts.tol, "subharmonicity slack tolerance");
    cmd->add_option("--out", st.out, "output path (file; directory for report all)");
    cmd->add_option("--format", st.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--family", st.family_arg, "family JSON file or catalog name");
    cmd->add_option("--t", st.t_arg, "family parameter t as \"re,im\"");
    cmd->add_option("--ball", st.ball_arg, "unit-ball instance with pole (r, 0); accepts 0.5 or r=0.5");
  };

  CLI::App* azukawa = app.add_subcommand("azukawa", "Azukawa pseudometric evaluation");
  CLI::App* az_eval = azukawa->add_subcommand("eval", "evaluate A(X)");
  add_common(az_eval);
  az_eval->add_option("--X", st.x_arg, "direction X as \"re,im;re,im;...\"")->required();
  az_eval->add_option("--gauge", st.gauge_arg, "gauge JSON file (balanced domain)");
  az_eval->add_flag("--limit", st.with_limit, "also run the definition-based limit estimator");

  CLI::App* indicatrix = app.add_subcommand("indicatrix", "Azukawa indicatrix volumes");
  CLI::App* ind_vol = indicatrix->add_subcommand("volume", "indicatrix volume");
  add_common(ind_vol);
  ind_vol->add_option("--gauge", st.gauge_arg, "gauge JSON file (balanced domain)");
  ind_vol->add_option("--method", st.method, "spherical, mc, or both")
      ->check(CLI::IsMember({"spherical", "mc", "both"}));
  ind_vol->add_option("--halfwidth", st.halfwidth, "MC sampling box halfwidth (default: auto)");
  CLI::App* ind_radii = indicatrix->add_subcommand("radii", "CSV of boundary radii e^{-A} over directions");
  add_common(ind_radii);
  ind_radii->add_option("--gauge", st.gauge_arg, "gauge JSON file (balanced domain)");

  CLI::App* check = app.add_subcommand("check", "run one verification check");
  check->add_option("name", check_name, "thm13 thm14 thm15 claim21 case2 lemma54 thm53")->required();
  add_common(check);

  CLI::App* report = app.add_subcommand("report", "aggregate reports");
  CLI::App* report_all_cmd = report->add_subcommand("all", "run every check against the catalog");
  add_common(report_all_cmd);

  std::string command_from_config;
  try {
    app.parse(argc, argv);
    if (!config_path.empty()) {
      // precedence: explicit flags > config file > built-in defaults
      CliState from_cfg;
      apply_config(from_cfg, config_path, command_from_config);
      st = from_cfg;
      app.clear();
      app.parse(argc, argv);  // option bindings point into st, flags overwrite config values
      if (!st.family_arg.empty()) st.family_inline.reset();
    }
    st.resolve_ball();

    if (az_eval->parsed()) return run_azukawa_eval(st);
    if (ind_vol->parsed()) return run_indicatrix_volume(st);
    if (ind_radii->parsed()) return run_indicatrix_radii(st);
    if (check->parsed()) return write_reports(run_named_check(check_name, st), st, false);
    if (report_all_cmd->parsed()) return write_reports(report_all(st.opts), st, true);

    if (!command_from_config.empty()) {
      // "command" from the config file, e.g. "check thm14" or "report all"
      const auto space = command_from_config.find(' ');
      const std::string head = command_from_config.substr(0, space);
      const std::string tail = space == std::string::npos ? "" : command_from_config.substr(space + 1);
      if (head == "check") return write_reports(run_named_check(tail, st), st, false);
      if (head == "report" && tail == "all") return write_reports(report_all(st.opts), st, true);
      fail(ErrorKind::config, "config: unsupported command \"" + command_from_config + "\"");
    }

    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  } catch (const pluri::Error& e) {
    std::cerr << "pluri: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "pluri: unexpected error: " << e.what() << "\n";
    return 2;
  }
}

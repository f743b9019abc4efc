#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tvarrd/asymptotic_rd.hpp"
#include "tvarrd/csv_io.hpp"
#include "tvarrd/finite_rd.hpp"
#include "tvarrd/manifest.hpp"
#include "tvarrd/matrices.hpp"
#include "tvarrd/model.hpp"
#include "tvarrd/model_io.hpp"
#include "tvarrd/spectral.hpp"
#include "tvarrd/svg_chart.hpp"
#include "tvarrd/version.hpp"

namespace {

using nlohmann::json;
using namespace tvarrd;

// Exit codes shared by every verb.
constexpr int kExitBadInput = 2;       // unreadable or malformed input file
constexpr int kExitValidation = 3;     // model failed the g-floor check
constexpr int kExitConvergence = 4;    // quadrature refinement exhausted
constexpr int kExitVerifyFailed = 5;   // verification threshold exceeded

struct GlobalOpts {
  std::string model_path;
  std::string out_path;
  std::string units = "nats";
  std::uint64_t seed = 12345;
  bool quiet = false;
  bool progress = false;
};

struct QuadOpts {
  QuadConfig cfg;

  void attach(CLI::App* cmd) {
    cmd->add_option("--r-panels", cfg.r_panels, "quadrature panels in r");
    cmd->add_option("--omega-panels", cfg.omega_panels,
                    "quadrature panels in omega");
    cmd->add_option("--nodes-per-panel", cfg.nodes_per_panel,
                    "Gauss-Legendre order per panel");
    cmd->add_option("--refine-tol", cfg.refine_tol,
                    "relative tolerance between panel doublings");
    cmd->add_option("--max-refinements", cfg.max_refinements,
                    "panel doubling budget");
  }

  json to_json() const {
    return json{{"r_panels", cfg.r_panels},
                {"omega_panels", cfg.omega_panels},
                {"nodes_per_panel", cfg.nodes_per_panel},
                {"refine_tol", cfg.refine_tol},
                {"max_refinements", cfg.max_refinements}};
  }
};

void note(const GlobalOpts& g, const std::string& msg) {
  if (!g.quiet) std::cerr << msg << '\n';
  if (g.progress) std::cout << msg << '\n';
}

TvarModel load_model_or_exit(const GlobalOpts& g) {
  if (g.model_path.empty()) {
    std::cerr << "error: --model is required for this command\n";
    std::exit(1);
  }
  return load_model_file(g.model_path);  // ModelParseError handled in main
}

void require_out(const GlobalOpts& g) {
  if (g.out_path.empty()) {
    std::cerr << "error: --out is required for this command\n";
    std::exit(1);
  }
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw CsvParseError(std::string("bad ") + what + " list entry: " + tok);
    }
  }
  if (out.empty())
    throw CsvParseError(std::string("empty ") + what + " list");
  return out;
}

int run_curve(const GlobalOpts& g, const std::string& method, int n,
              int points, double g_floor, const QuadOpts& quad) {
  require_out(g);
  const TvarModel model = load_model_or_exit(g);
  RdCurve curve;
  if (method == "finite") {
    if (n <= 0) {
      std::cerr << "error: --method finite requires --n\n";
      return 1;
    }
    curve = finite_rd_curve(model, n, points);
  } else {
    const ValidationReport rep = validate(model, g_floor);
    if (!rep.pass) {
      std::cerr << "model validation failed: " << rep.message
                << " (inf g = " << rep.inf_g << ", floor = " << rep.g_floor
                << ")\n";
      return kExitValidation;
    }
    curve = asymptotic_rd_curve(model, points, quad.cfg);
  }

  std::ostringstream csv;
  write_curve_csv(csv, curve);
  atomic_write_file(g.out_path, csv.str());

  int unconverged = 0;
  for (const RdPoint& p : curve.points)
    if (!p.converged) ++unconverged;

  json settings{{"method", method},         {"points", points},
                {"units", g.units},         {"g_floor", g_floor},
                {"source_tag", curve.source_tag}, {"d_max", curve.d_max},
                {"unconverged_points", unconverged}};
  if (method == "finite")
    settings["n"] = n;
  else
    settings["quad"] = quad.to_json();
  write_manifest(g.out_path + ".manifest.json",
                 make_manifest("curve", model_hash(model), settings));
  note(g, "curve: wrote " + std::to_string(curve.points.size()) +
              " points to " + g.out_path);
  if (unconverged > 0) {
    std::cerr << "convergence failure: " << unconverged << " of "
              << curve.points.size()
              << " points exhausted the refinement budget (outputs written)\n";
    return kExitConvergence;
  }
  return 0;
}

int run_verify(const GlobalOpts& g, const std::string& n_list,
               const std::string& k_list, double rel_err_max,
               const QuadOpts& quad) {
  require_out(g);
  const TvarModel model = load_model_or_exit(g);
  const std::vector<int> ns = parse_int_list(n_list, "n");
  const std::vector<int> ks = parse_int_list(k_list, "k");

  json records = json::array();
  bool all_ok = true;
  for (int n : ns) {
    for (int k : ks) {
      const MomentReport rep = moment_check(model, n, k, quad.cfg);
      records.push_back(json{{"check", "moment"},
                             {"n", rep.n},
                             {"k", rep.k},
                             {"trace_avg", rep.trace_avg},
                             {"integral", rep.integral},
                             {"abs_err", rep.abs_err},
                             {"rel_err", rep.rel_err}});
      all_ok = all_ok && rep.rel_err <= rel_err_max;
      note(g, "verify: n=" + std::to_string(n) + " k=" + std::to_string(k) +
                  " rel_err=" + std::to_string(rep.rel_err));
    }
    const WeakNormReport wn = weak_norm_check(model, n, quad.cfg);
    records.push_back(json{{"check", "weak_norm"},
                           {"n", wn.n},
                           {"trace_norm", wn.trace_norm},
                           {"integral_norm", wn.integral_norm},
                           {"abs_err", wn.abs_err},
                           {"rel_err", wn.rel_err}});
    all_ok = all_ok && wn.rel_err <= rel_err_max;
  }

  json doc{{"model_hash", model_hash(model)},
           {"rel_err_max", rel_err_max},
           {"pass", all_ok},
           {"records", records}};
  atomic_write_file(g.out_path, doc.dump(2) + "\n");
  write_manifest(g.out_path + ".manifest.json",
                 make_manifest("verify", model_hash(model),
                               json{{"n_list", ns},
                                    {"k_list", ks},
                                    {"rel_err_max", rel_err_max},
                                    {"quad", quad.to_json()}}));
  if (!all_ok) {
    std::cerr << "verification threshold exceeded (report written to "
              << g.out_path << ")\n";
    return kExitVerifyFailed;
  }
  note(g, "verify: all checks within rel_err_max");
  return 0;
}

int run_simulate(const GlobalOpts& g, int n, int paths) {
  require_out(g);
  const TvarModel model = load_model_or_exit(g);
  const SamplePaths sp = simulate(model, n, paths, g.seed);
  std::ostringstream csv;
  write_paths_csv(csv, sp);
  atomic_write_file(g.out_path, csv.str());
  write_manifest(g.out_path + ".manifest.json",
                 make_manifest("simulate", model_hash(model),
                               json{{"n", n},
                                    {"paths", paths},
                                    {"seed", g.seed},
                                    {"rng", "splitmix64(seed ^ splitmix64(p+1))"
                                            " -> mt19937_64 -> Box-Muller"}}));
  note(g, "simulate: wrote " + std::to_string(paths) + " paths to " +
              g.out_path);
  return 0;
}

int run_spectrum(const GlobalOpts& g, int nr, int nw, double g_floor) {
  require_out(g);
  const TvarModel model = load_model_or_exit(g);
  const ValidationReport rep = validate(model, g_floor);
  if (!rep.pass) {
    std::cerr << "model validation failed: " << rep.message << "\n";
    return kExitValidation;
  }
  const SpectrumGrid grid = sample_spectrum(model, nr, nw);
  std::ostringstream csv;
  write_spectrum_csv(csv, grid);
  atomic_write_file(g.out_path, csv.str());
  write_manifest(g.out_path + ".manifest.json",
                 make_manifest("spectrum", model_hash(model),
                               json{{"nr", nr},
                                    {"nw", nw},
                                    {"g_floor", g_floor},
                                    {"g_min", grid.g_min},
                                    {"g_max", grid.g_max},
                                    {"sup_bound", rep.sup_bound}}));
  note(g, "spectrum: g_min=" + std::to_string(grid.g_min) +
              " g_max=" + std::to_string(grid.g_max));
  return 0;
}

std::string legend_for(const std::string& csv_path) {
  const std::string manifest_path = csv_path + ".manifest.json";
  std::error_code ec;
  if (std::filesystem::exists(manifest_path, ec)) {
    try {
      const json doc = json::parse(read_file(manifest_path));
      if (doc.contains("settings") && doc["settings"].contains("source_tag"))
        return doc["settings"]["source_tag"].get<std::string>();
    } catch (const std::exception&) {
      // fall through to the filename stem
    }
  }
  return std::filesystem::path(csv_path).stem().string();
}

int run_plot(const GlobalOpts& g, const std::vector<std::string>& inputs) {
  require_out(g);
  const bool bits = g.units == "bits";
  constexpr double kLn2 = 0.69314718055994530942;

  std::vector<ChartSeries> series;
  json input_meta = json::array();
  for (const std::string& path : inputs) {
    const std::string text = read_file(path);  // runtime_error -> exit 2
    std::istringstream is(text);
    const RdCurve curve = read_curve_csv(is, path);
    ChartSeries s;
    s.label = legend_for(path);
    for (const RdPoint& p : curve.points)
      s.points.emplace_back(p.distortion, bits ? p.rate / kLn2 : p.rate);
    series.push_back(std::move(s));
    char hash[17];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(
                      fnv1a64(text.data(), text.size())));
    input_meta.push_back(json{{"path", path}, {"content_hash", hash}});
  }
  const std::string svg = render_line_chart(
      series, "distortion (mean squared error)",
      bits ? "rate (bits per letter)" : "rate (nats per letter)");
  atomic_write_file(g.out_path, svg);
  write_manifest(g.out_path + ".manifest.json",
                 make_manifest("plot", "",
                               json{{"inputs", input_meta},
                                    {"units", g.units}}));
  note(g, "plot: wrote " + g.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate-distortion curves for Gaussian time-varying "
               "autoregressive sources"};
  app.set_version_flag("--version", std::string("tvarrd ") + kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--model", g.model_path, "model config JSON");
  app.add_option("--out", g.out_path, "output file path");
  app.add_option("--units", g.units, "rate units for plots/summaries")
      ->check(CLI::IsMember({"nats", "bits"}));
  app.add_option("--seed", g.seed, "RNG seed for seeded commands");
  app.add_flag("--quiet", g.quiet, "suppress stderr notes");
  app.add_flag("--progress", g.progress, "echo progress lines on stdout");

  // curve
  auto* curve = app.add_subcommand("curve", "compute a rate-distortion curve");
  std::string method;
  int curve_n = 0;
  int curve_points = 33;
  double curve_g_floor = kDefaultGFloor;
  QuadOpts curve_quad;
  curve->add_option("--method", method, "finite | asymptotic")
      ->required()
      ->check(CLI::IsMember({"finite", "asymptotic"}));
  curve->add_option("--n", curve_n, "block length for the finite method");
  curve->add_option("--points", curve_points, "points on the theta sweep");
  curve->add_option("--g-floor", curve_g_floor,
                    "admissibility floor on inf g");
  curve_quad.attach(curve);

  // verify
  auto* verify = app.add_subcommand(
      "verify", "eigenvalue-distribution checks across an n ladder");
  std::string n_list = "256,512,1024";
  std::string k_list = "1,2";
  double rel_err_max = 1e-2;
  QuadOpts verify_quad;
  verify->add_option("--n-list", n_list, "comma-separated block lengths");
  verify->add_option("--k-list", k_list, "comma-separated moment orders");
  verify->add_option("--rel-err-max", rel_err_max,
                     "pass threshold on relative error");
  verify_quad.attach(verify);

  // simulate
  auto* simulate_cmd =
      app.add_subcommand("simulate", "draw sample paths of the source");
  int sim_n = 0;
  int sim_paths = 1;
  simulate_cmd->add_option("--n", sim_n, "path length")->required();
  simulate_cmd->add_option("--paths", sim_paths, "number of paths");

  // spectrum
  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "tabulate g(r, omega) on a grid");
  int nr = 257;
  int nw = 513;
  double spec_g_floor = kDefaultGFloor;
  spectrum_cmd->add_option("--nr", nr, "grid nodes in r");
  spectrum_cmd->add_option("--nw", nw, "grid nodes in omega");
  spectrum_cmd->add_option("--g-floor", spec_g_floor,
                           "admissibility floor on inf g");

  // plot
  auto* plot = app.add_subcommand("plot", "render curve CSVs as one SVG");
  std::vector<std::string> plot_inputs;
  plot->add_option("inputs", plot_inputs, "curve CSV files")
      ->required()
      ->expected(-1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (curve->parsed())
      return run_curve(g, method, curve_n, curve_points, curve_g_floor,
                       curve_quad);
    if (verify->parsed())
      return run_verify(g, n_list, k_list, rel_err_max, verify_quad);
    if (simulate_cmd->parsed()) return run_simulate(g, sim_n, sim_paths);
    if (spectrum_cmd->parsed())
      return run_spectrum(g, nr, nw, spec_g_floor);
    if (plot->parsed()) return run_plot(g, plot_inputs);
  } catch (const ModelParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const CsvParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const ModelValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const QuadratureError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  return 0;
}

// Command-line front end: simulate surface traces, calibrate width bounds and
// support, fit single traces, reconstruct width profiles, and run the bundled
// benchmark suite. Exit codes: 0 success, 2 validation, 3 numeric, 4 I/O.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wg/bench_configs.hpp"
#include "wg/calibrate.hpp"
#include "wg/errors.hpp"
#include "wg/forward.hpp"
#include "wg/mode_ode.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace wg;

namespace {

constexpr double pi = std::numbers::pi;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw IoError("config parse error in " + path + ": " + e.what());
  }
  return j;
}

Profile profile_from_config(const json& cfg) {
  if (!cfg.contains("profile"))
    throw ValidationError("config: missing 'profile'");
  const json& p = cfg.at("profile");
  if (p.is_string()) {
    const std::string s = p.get<std::string>();
    if (s.size() == 2 && s[0] == 'h') return builtin_profile(s);
    return profile_from_json(load_json_file(s).dump());
  }
  return profile_from_json(p.dump());
}

std::vector<double> frequencies_from_config(const json& cfg) {
  if (!cfg.contains("frequencies"))
    throw ValidationError("config: missing 'frequencies'");
  const json& f = cfg.at("frequencies");
  if (f.is_string()) return parse_frequency_grid(f.get<std::string>());
  return f.get<std::vector<double>>();
}

SourceSpec source_from_config(const json& cfg) {
  SourceSpec spec;
  if (!cfg.contains("sources")) throw ValidationError("config: missing 'sources'");
  const json& s = cfg.at("sources");
  // Benchmark shorthand: f = y delta_{x=s} plus b_top = delta_{x=s}.
  for (const json& x : s.value("benchmark_positions", json::array()))
    for (const auto& t : benchmark_source({x.get<double>()}).interior_shaped_points)
      spec.interior_shaped_points.push_back(t);
  for (const json& x : s.value("benchmark_positions", json::array()))
    spec.boundary_top_points.push_back({x.get<double>(), 1.0});
  for (const json& t : s.value("interior_mode_points", json::array()))
    spec.interior_mode_points.push_back(
        {t.at("n").get<int>(), t.at("x").get<double>(),
         cplx(t.value("re", 1.0), t.value("im", 0.0))});
  for (const json& t : s.value("boundary_top_points", json::array()))
    spec.boundary_top_points.push_back(
        {t.at("x").get<double>(), cplx(t.value("re", 1.0), t.value("im", 0.0))});
  for (const json& t : s.value("boundary_bottom_points", json::array()))
    spec.boundary_bottom_points.push_back(
        {t.at("x").get<double>(), cplx(t.value("re", 1.0), t.value("im", 0.0))});
  if (spec.empty()) throw ValidationError("config: 'sources' is empty");
  return spec;
}

std::string k_tag(double k) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", k);
  std::string s = buf;
  for (char& c : s)
    if (c == '.') c = 'p';
  return s;
}

FitBox box_from_json(const json& b) {
  FitBox box;
  box.z_max = b.value("z_max", box.z_max);
  box.alpha_min = b.value("alpha_min", box.alpha_min);
  box.alpha_max = b.value("alpha_max", box.alpha_max);
  box.beta_min = b.value("beta_min", box.beta_min);
  box.beta_max = b.value("beta_max", box.beta_max);
  return box;
}

json report_to_json(const FitReport& rep) {
  return {{"params",
           {{"re_z", rep.params.z.real()},
            {"im_z", rep.params.z.imag()},
            {"alpha", rep.params.alpha},
            {"beta", rep.params.beta}}},
          {"residual_l2", rep.residual_l2},
          {"iterations", rep.iterations},
          {"converged", rep.converged},
          {"hessian_min_eigenvalue", rep.hessian_min_eigenvalue},
          {"lambda", rep.params.beta / rep.params.alpha}};
}

// --------------------------------------------------------------------------

int cmd_simulate(const json& cfg) {
  const Profile profile = profile_from_config(cfg);
  const std::vector<double> ks = frequencies_from_config(cfg);
  const SourceSpec spec = source_from_config(cfg);
  const auto span = cfg.value("span", std::vector<double>{-8.0, 8.0});
  const int samples = cfg.value("samples", 2048);
  const double noise = cfg.value("noise", 0.0);
  const std::uint64_t seed = cfg.value("seed", 0);
  const fs::path out_dir = cfg.value("out", std::string("."));
  fs::create_directories(out_dir);

  const std::vector<double> xs = linspace(span.at(0), span.at(1), samples);
  for (size_t i = 0; i < ks.size(); ++i) {
    SurfaceTrace t = synthesize_surface(profile, ks[i], spec, xs);
    if (noise > 0.0) t = add_noise(t, noise, seed + i);
    t.meta["profile"] = profile.name;
    const fs::path base = out_dir / ("trace_" + k_tag(ks[i]));
    write_trace_csv(t, base.string() + ".csv");
    write_trace_meta(t, base.string() + ".meta.json");
  }
  std::cout << "wrote " << ks.size() << " traces to " << out_dir.string() << "\n";
  return 0;
}

int cmd_fit(const std::string& trace_path, const json& cfg, const std::string& out_path) {
  SurfaceTrace t = read_trace_csv(trace_path);
  FitBox box = box_from_json(cfg.value("fit_box", json::object()));
  FitOptions opt;
  if (cfg.value("method", std::string("lm")) == "gd")
    opt.method = FitOptions::Method::gradient_descent;
  const FitReport rep = fit_least_squares(t, box, std::nullopt, opt);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write " + out_path);
    out << report_to_json(rep).dump(2) << "\n";
  }
  if (!rep.converged) throw NumericError("fit did not converge");
  std::cout << "lambda = " << lambda_resonant_point(rep) << "\n";
  return 0;
}

int cmd_reconstruct(const json& cfg) {
  const Profile profile = profile_from_config(cfg);
  FrequencyPlan plan;
  plan.mode = cfg.value("mode", 1);
  plan.k_min = plan.mode * pi / profile.h_max;
  plan.k_max = plan.mode * pi / profile.h_min;
  plan.frequencies = frequencies_from_config(cfg);

  ReconstructOptions opt;
  if (cfg.contains("window")) {
    opt.r = cfg["window"].value("r", opt.r);
    opt.eta = cfg["window"].value("eta", profile.slope_scale);
  } else {
    opt.eta = profile.slope_scale;
  }
  if (cfg.contains("fit_box")) opt.box = box_from_json(cfg["fit_box"]);
  for (const json& b : cfg.value("branches", json::array()))
    opt.branches.push_back(
        {{b.at("region").at(0).get<double>(), b.at("region").at(1).get<double>()},
         b.at("source").get<double>()});
  if (cfg.contains("anchors")) {
    opt.anchor_left_width = cfg["anchors"].at(0).get<double>();
    opt.anchor_right_width = cfg["anchors"].at(1).get<double>();
  }

  Interval support = profile.support;
  if (cfg.contains("support")) {
    support = {cfg["support"].at(0).get<double>(), cfg["support"].at(1).get<double>()};
  }

  std::vector<SurfaceTrace> traces;
  if (cfg.contains("traces_dir")) {
    const fs::path dir = cfg["traces_dir"].get<std::string>();
    for (double k : plan.frequencies) {
      const fs::path base = dir / ("trace_" + k_tag(k));
      SurfaceTrace t = read_trace_csv(base.string() + ".csv");
      t.k = k;
      traces.push_back(std::move(t));
    }
  } else {
    const SourceSpec spec = source_from_config(cfg);
    const auto span = cfg.value("span", std::vector<double>{-8.0, 8.0});
    const std::vector<double> xs =
        linspace(span.at(0), span.at(1), cfg.value("samples", 2048));
    const double noise = cfg.value("noise", 0.0);
    const std::uint64_t seed = cfg.value("seed", 0);
    for (size_t i = 0; i < plan.frequencies.size(); ++i) {
      SurfaceTrace t = synthesize_surface(profile, plan.frequencies[i], spec, xs);
      if (noise > 0.0) t = add_noise(t, noise, seed + i);
      traces.push_back(std::move(t));
    }
  }

  const bool have_truth = cfg.value("compare_truth", true);
  ReconstructionResult res;
  const fs::path out_dir = cfg.value("out", std::string("."));
  fs::create_directories(out_dir);
  try {
    res = reconstruct_profile(plan, traces, support, opt,
                              have_truth ? &profile : nullptr);
  } catch (const NumericError&) {
    // Partial results: persist the drop log before re-throwing.
    json partial;
    partial["error"] = "reconstruction failed (fewer than 3 surviving frequencies)";
    std::ofstream out(out_dir / "reconstruction.json");
    out << partial.dump(2) << "\n";
    throw;
  }

  {
    std::ofstream out(out_dir / "reconstruction.json");
    if (!out) throw IoError("cannot write reconstruction.json");
    out << reconstruction_to_json(res) << "\n";
  }
  {
    std::ofstream out(out_dir / "plot.csv");
    out << reconstruction_plot_csv(res, have_truth ? &profile : nullptr);
  }
  if (res.metrics)
    std::cout << "relative Linf error = " << 100.0 * res.metrics->rel_sup_dense << " %\n";
  std::cout << "recovered " << res.points.size() << " points, dropped "
            << res.dropped.size() << "\n";
  return 0;
}

int cmd_calibrate(const json& cfg) {
  const Profile profile = profile_from_config(cfg);
  const std::vector<double> xs = linspace(-8.0, 8.0, 512);
  TraceGenerator gen = [&](double k, const SourceSpec& src) {
    SynthesisOptions opt;
    opt.warn_source_side = false;
    return synthesize_surface(profile, k, src, xs, opt);
  };
  const std::vector<double> scan =
      parse_frequency_grid(cfg.value("scan", std::string("30.6:32.2:30")));
  SourceSpec left, right;
  left.boundary_top_points.push_back({cfg.value("left_source", -5.0), 1.0});
  right.boundary_top_points.push_back({cfg.value("right_source", 5.0), 1.0});
  const BoundsEstimate est = calibrate_bounds(gen, scan, left, right);

  const std::vector<double> sweep =
      linspace(cfg.value("sweep_lo", -8.0), cfg.value("sweep_hi", 8.0),
               cfg.value("sweep_count", 33));
  const double k_thin = est.mode * pi / est.h_min - 1e-5;
  const double k_thick = est.mode * pi / est.h_max + 1e-5;
  const Interval support = calibrate_support(gen, k_thin, k_thick, sweep);

  json j = {{"h_min", est.h_min},
            {"h_max", est.h_max},
            {"mode", est.mode},
            {"k_peak_thin", est.k_peak_thin},
            {"k_peak_thick", est.k_peak_thick},
            {"support", {support.lo, support.hi}}};
  const std::string out_path = cfg.value("out", std::string("calibration.json"));
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot write " + out_path);
  out << j.dump(2) << "\n";
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_bench(const json& cfg) {
  const fs::path out_dir = cfg.value("out", std::string("bench"));
  fs::create_directories(out_dir);
  const std::uint64_t seed = cfg.value("seed", 0);
  const double noise = cfg.value("noise", 0.0);

  std::ostringstream md, csv;
  md << "# Benchmark suite\n\n"
     << "| profile | relative Linf error | reference | points | dropped |\n"
     << "|---------|--------------------:|----------:|-------:|--------:|\n";
  csv << "profile,rel_error,reference,points,dropped\n";
  bool all_ok = true;
  for (const char* id : {"h1", "h2", "h3", "h4", "h5", "h6", "h7"}) {
    try {
      const BenchmarkCase c = benchmark_case(id);
      const ReconstructionResult res = run_case(c, noise, seed);
      const double rel = res.metrics->rel_sup_dense;
      md << "| " << id << " | " << 100.0 * rel << " % | "
         << 100.0 * c.reference_rel_error << " % | " << res.points.size() << " | "
         << res.dropped.size() << " |\n";
      csv << id << "," << rel << "," << c.reference_rel_error << ","
          << res.points.size() << "," << res.dropped.size() << "\n";
      std::ofstream pj(out_dir / (std::string(id) + "_reconstruction.json"));
      pj << reconstruction_to_json(res) << "\n";
      std::ofstream pc(out_dir / (std::string(id) + "_plot.csv"));
      pc << reconstruction_plot_csv(res, &c.profile);
    } catch (const Error& e) {
      all_ok = false;
      md << "| " << id << " | failed: " << e.what() << " | | | |\n";
      csv << id << ",failed,,,\n";
    }
  }

  md << "\n## Noise sweep (median |Lambda error| over 32 seeds)\n\n";
  const auto rows = noise_sweep_study(32);
  std::ostringstream ns;
  ns << "level,direct,ls_t1,ls_t2,ls_t3\n";
  for (const auto& r : rows)
    ns << r.level << "," << r.direct << "," << r.ls_t1 << "," << r.ls_t2 << ","
       << r.ls_t3 << "\n";
  md << "see noise_sweep.csv\n";

  std::ofstream(out_dir / "summary.md") << md.str();
  std::ofstream(out_dir / "summary.csv") << csv.str();
  std::ofstream(out_dir / "noise_sweep.csv") << ns.str();
  std::cout << md.str();
  return all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slowly varying waveguide toolkit: forward synthesis and width "
               "reconstruction from locally resonant surface data"};
  app.require_subcommand(1);

  std::string config_path, trace_path, out_path, profile_id, freqs;
  std::vector<double> source_positions;
  double noise = -1.0;
  long long seed = -1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", out_path, "output directory or file");
    sub->add_option("--profile", profile_id, "builtin profile id (h1..h7) or JSON file");
    sub->add_option("--freqs", freqs, "frequency grid a:b:l");
    sub->add_option("--source-pos", source_positions,
                    "benchmark source position(s): f = y delta + b_top delta");
    sub->add_option("--noise", noise, "relative noise amplitude");
    sub->add_option("--seed", seed, "noise seed");
  };

  CLI::App* sim = app.add_subcommand("simulate", "synthesize per-frequency traces");
  add_common(sim);
  CLI::App* fit = app.add_subcommand("fit", "fit the three-parameter model to a trace");
  fit->add_option("--trace", trace_path, "trace CSV")->required();
  add_common(fit);
  CLI::App* rec = app.add_subcommand("reconstruct", "full width reconstruction");
  add_common(rec);
  CLI::App* cal = app.add_subcommand("calibrate", "width bounds and support sweeps");
  add_common(cal);
  CLI::App* ben = app.add_subcommand("bench", "benchmark suite + noise study");
  add_common(ben);

  CLI11_PARSE(app, argc, argv);

  try {
    json cfg = json::object();
    if (!config_path.empty()) cfg = load_json_file(config_path);
    // Flags override config fields.
    if (!profile_id.empty()) cfg["profile"] = profile_id;
    if (!freqs.empty()) cfg["frequencies"] = freqs;
    if (!source_positions.empty())
      cfg["sources"] = {{"benchmark_positions", source_positions}};
    if (noise >= 0.0) cfg["noise"] = noise;
    if (seed >= 0) cfg["seed"] = static_cast<std::uint64_t>(seed);
    if (!out_path.empty()) cfg["out"] = out_path;

    if (sim->parsed()) return cmd_simulate(cfg);
    if (fit->parsed()) return cmd_fit(trace_path, cfg, out_path);
    if (rec->parsed()) return cmd_reconstruct(cfg);
    if (cal->parsed()) return cmd_calibrate(cfg);
    if (ben->parsed()) return cmd_bench(cfg);
  } catch (const ForbiddenFrequencyError& e) {
    std::cerr << "error: " << e.what() << " [delta(k) = " << e.delta << "]\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

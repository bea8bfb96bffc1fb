// fmtk: fuzzy measure toolkit command line.
//
// Exit codes: 0 success, 1 domain error (bad data, invalid measure, solver
// failure), 2 usage error (unknown flags, malformed values).

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fmtk/fmtk.hpp"

namespace {

struct GlobalOpts {
  bool full_precision = false;
};

std::string fmt(double v, const GlobalOpts& g) {
  char buf[40];
  std::snprintf(buf, sizeof buf, g.full_precision ? "%.17g" : "%.6g", v + 0.0);
  return buf;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty())
    std::cout << content;
  else
    fmtk::write_text_file(path, content);
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

fmtk::FuzzyMeasure load(const std::string& path, double tol, bool no_validate,
                        std::string* name = nullptr) {
  if (no_validate) return fmtk::FuzzyMeasure::trusted(fmtk::load_set_function(path, name));
  return fmtk::load_measure(path, tol, name);
}

void add_measure_opts(CLI::App* cmd, std::string& path, double& tol, bool& no_validate) {
  cmd->add_option("measure", path, "measure JSON file")->required();
  cmd->add_option("--tolerance", tol, "validation tolerance")->capture_default_str();
  cmd->add_flag("--no-validate", no_validate, "skip monotonicity validation on load");
}

std::string report_text(const fmtk::MeasureReport& r, const GlobalOpts& g) {
  std::string out;
  out += "entropy: " + fmt(r.summary.entropy, g) + "\n";
  out += "orness: " + fmt(r.summary.orness, g) + "\n";
  out += "level_means:";
  for (double m : r.summary.level_means) out += " " + fmt(m, g);
  out += "\n";
  out += "additive: " + yesno(r.additive) + "\n";
  out += "symmetric: " + yesno(r.symmetric) + "\n";
  out += "superadditive: " + yesno(r.superadditive) + "\n";
  out += "subadditive: " + yesno(r.subadditive) + "\n";
  out += "supermodular: " + yesno(r.supermodular) + "\n";
  out += "submodular: " + yesno(r.submodular) + "\n";
  out += "additivity_order: " + std::to_string(r.families.additivity_order) + "\n";
  out += "maxitive_order: " + std::to_string(r.families.maxitive_order) + "\n";
  out += "minitive_order: " + std::to_string(r.families.minitive_order) + "\n";
  out += "tolerant_order: " + std::to_string(r.families.tolerant_order) + "\n";
  out += "intolerant_order: " + std::to_string(r.families.intolerant_order) + "\n";
  out += "symmetry_p: " + std::to_string(r.families.symmetry_p) + "\n";
  if (r.families.interactive)
    out += "k_interactive: k=" + std::to_string(r.families.interactive->first) +
           " K=" + fmt(r.families.interactive->second, g) + "\n";
  else
    out += "k_interactive: none\n";
  return out;
}

const std::map<std::string, fmtk::GraphStyle> style_names{
    {"topological", fmtk::GraphStyle::topological}, {"height", fmtk::GraphStyle::height_on}};
const std::map<std::string, fmtk::OverlayKind> overlay_names{
    {"none", fmtk::OverlayKind::none},
    {"mobius", fmtk::OverlayKind::mobius},
    {"nonadditivity", fmtk::OverlayKind::nonadditivity},
    {"nonmodularity", fmtk::OverlayKind::nonmodularity},
    {"shapley", fmtk::OverlayKind::shapley_comprehensive}};
const std::map<std::string, fmtk::LabelMode> label_names{{"canonical", fmtk::LabelMode::canonical},
                                                         {"paper", fmtk::LabelMode::paper}};

void add_style_opts(CLI::App* cmd, fmtk::StyleConfig& cfg) {
  cmd->add_option("--style", cfg.style, "graph style")
      ->transform(CLI::CheckedTransformer(style_names, CLI::ignore_case));
  cmd->add_option("--overlay", cfg.overlay, "index overlay at the vertices")
      ->transform(CLI::CheckedTransformer(overlay_names, CLI::ignore_case));
  cmd->add_option("--labels", cfg.label_mode, "subset label style")
      ->transform(CLI::CheckedTransformer(label_names, CLI::ignore_case));
  cmd->add_option("--width", cfg.canvas_width, "canvas width in px")->capture_default_str();
  cmd->add_option("--height", cfg.canvas_height, "canvas height in px")->capture_default_str();
  cmd->add_option("--margin", cfg.margin, "canvas margin in px")->capture_default_str();
  cmd->add_option("--stroke-min", cfg.stroke_min, "minimum edge stroke width")
      ->capture_default_str();
  cmd->add_option("--stroke-max", cfg.stroke_max, "maximum edge stroke width")
      ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"fuzzy measure toolkit: transforms, integrals, fitting, rendering"};
  app.require_subcommand(1);
  GlobalOpts global;
  app.add_flag("--full-precision", global.full_precision,
               "print 17 significant digits instead of 6");

  // validate
  std::string v_path;
  double v_tol = fmtk::default_tolerance;
  auto* c_validate = app.add_subcommand("validate", "check a measure file for monotonicity");
  c_validate->fallthrough();
  c_validate->add_option("measure", v_path, "measure JSON file")->required();
  c_validate->add_option("--tolerance", v_tol, "validation tolerance")->capture_default_str();

  // props
  std::string p_path;
  double p_tol = fmtk::default_tolerance;
  bool p_noval = false;
  auto* c_props = app.add_subcommand("props", "structural properties and family orders");
  c_props->fallthrough();
  add_measure_opts(c_props, p_path, p_tol, p_noval);

  // index
  std::string i_path, i_out;
  double i_tol = fmtk::default_tolerance;
  bool i_noval = false;
  std::string i_kind;
  fmtk::LabelMode i_labels = fmtk::LabelMode::canonical;
  auto* c_index = app.add_subcommand("index", "per-subset transform or index values as CSV");
  c_index->fallthrough();
  add_measure_opts(c_index, i_path, i_tol, i_noval);
  c_index
      ->add_option("--kind", i_kind,
                   "mu, mobius, shapley, nonadditivity or nonmodularity")
      ->required();
  c_index->add_option("--labels", i_labels, "subset label style")
      ->transform(CLI::CheckedTransformer(label_names, CLI::ignore_case));
  c_index->add_option("-o,--output", i_out, "output file (default stdout)");

  // integrate
  std::string g_path;
  double g_tol = fmtk::default_tolerance;
  bool g_noval = false;
  std::vector<double> g_x;
  std::string g_which = "all";
  auto* c_integrate = app.add_subcommand("integrate", "Choquet / Sugeno / pan integrals");
  c_integrate->fallthrough();
  add_measure_opts(c_integrate, g_path, g_tol, g_noval);
  c_integrate->add_option("--x", g_x, "input vector, comma separated")
      ->required()
      ->delimiter(',');
  c_integrate->add_option("--integral", g_which, "choquet, sugeno, pan or all")
      ->check(CLI::IsMember({"choquet", "sugeno", "pan", "all"}))
      ->capture_default_str();

  // fit
  std::string f_data, f_out, f_outdir, f_name = "lad-fit";
  bool f_incremental = false, f_no_minimal = false;
  double f_offset = 0, f_scale = 0;
  bool f_have_offset = false, f_have_scale = false;
  fmtk::StyleConfig f_style;
  f_style.style = fmtk::GraphStyle::height_on;
  auto* c_fit = app.add_subcommand("fit", "least-absolute-deviation Choquet fit");
  c_fit->fallthrough();
  c_fit->add_option("dataset", f_data, "dataset CSV file")->required();
  c_fit->add_flag("--incremental", f_incremental, "refit after each alternative");
  c_fit->add_option("-o,--output", f_out, "measure JSON output (default stdout summary only)");
  c_fit->add_option("--out-dir", f_outdir, "directory for incremental frames + manifest");
  c_fit->add_option("--name", f_name, "name stored in emitted measures")->capture_default_str();
  c_fit->add_flag("--no-minimal", f_no_minimal, "skip the stage-two minimal-measure tie-break");
  auto* fo = c_fit->add_option("--offset", f_offset, "normalization offset override");
  auto* fs = c_fit->add_option("--scale", f_scale, "normalization scale override");
  fo->needs(fs);
  fs->needs(fo);
  add_style_opts(c_fit, f_style);

  // random
  int r_n = 4;
  std::uint64_t r_seed = 0;
  int r_count = 1;
  std::string r_out, r_outdir, r_name;
  auto* c_random = app.add_subcommand("random", "generate random fuzzy measures");
  c_random->fallthrough();
  c_random->add_option("--n", r_n, "number of criteria")->required();
  c_random->add_option("--seed", r_seed, "RNG seed")->required();
  c_random->add_option("--count", r_count, "how many measures")->capture_default_str();
  c_random->add_option("-o,--output", r_out, "output file for a single measure");
  c_random->add_option("--out-dir", r_outdir, "directory for a batch");
  c_random->add_option("--name", r_name, "name stored in the measure file");

  // render
  std::string d_path, d_out, d_format = "svg";
  double d_tol = fmtk::default_tolerance;
  bool d_noval = false;
  fmtk::StyleConfig d_style;
  auto* c_render = app.add_subcommand("render", "lattice graph as SVG or DOT");
  c_render->fallthrough();
  add_measure_opts(c_render, d_path, d_tol, d_noval);
  c_render->add_option("--format", d_format, "svg or dot")
      ->check(CLI::IsMember({"svg", "dot"}))
      ->capture_default_str();
  c_render->add_option("-o,--output", d_out, "output file (default stdout)");
  add_style_opts(c_render, d_style);

  // compare-integrals
  std::vector<double> q_x;
  int q_n = 0, q_samples = 200;
  std::uint64_t q_seed = 0;
  std::string q_out, q_svg;
  auto* c_compare = app.add_subcommand("compare-integrals",
                                       "Monte Carlo comparison of the three integrals");
  c_compare->fallthrough();
  c_compare->add_option("--x", q_x, "input vector, comma separated")->required()->delimiter(',');
  c_compare->add_option("--n", q_n, "number of criteria (checked against --x)");
  c_compare->add_option("--samples", q_samples, "number of random measures")
      ->capture_default_str();
  c_compare->add_option("--seed", q_seed, "RNG seed")->required();
  c_compare->add_option("-o,--output", q_out, "CSV output file");
  c_compare->add_option("--svg", q_svg, "line plot output file");

  // profile-alternatives
  std::string a_data, a_out, a_svg;
  int a_samples = 1000;
  std::uint64_t a_seed = 0;
  bool a_raw = false;
  auto* c_profile = app.add_subcommand("profile-alternatives",
                                       "Choquet profile of each alternative over random measures");
  c_profile->fallthrough();
  c_profile->add_option("dataset", a_data, "dataset CSV file")->required();
  c_profile->add_option("--samples", a_samples, "number of random measures")
      ->capture_default_str();
  c_profile->add_option("--seed", a_seed, "RNG seed")->required();
  c_profile->add_flag("--raw", a_raw, "scores are already normalized to [0,1]");
  c_profile->add_option("-o,--output", a_out, "CSV output file");
  c_profile->add_option("--svg", a_svg, "line plot output file");

  // cluster
  std::string k_path, k_out, k_svg;
  double k_tol = fmtk::default_tolerance;
  bool k_noval = false;
  std::vector<std::string> k_features{"mu", "nonadditivity"};
  fmtk::LabelMode k_labels = fmtk::LabelMode::canonical;
  auto* c_cluster = app.add_subcommand("cluster", "hierarchical clustering of subset features");
  c_cluster->fallthrough();
  add_measure_opts(c_cluster, k_path, k_tol, k_noval);
  c_cluster->add_option("--features", k_features, "feature columns, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  c_cluster->add_option("--labels", k_labels, "subset label style")
      ->transform(CLI::CheckedTransformer(label_names, CLI::ignore_case));
  c_cluster->add_option("-o,--output", k_out, "merge list CSV output file");
  c_cluster->add_option("--svg", k_svg, "heatmap output file");

  // summarize
  std::string s_path;
  double s_tol = fmtk::default_tolerance;
  bool s_noval = false;
  auto* c_summarize = app.add_subcommand("summarize", "entropy, orness, level means, family flags");
  c_summarize->fallthrough();
  add_measure_opts(c_summarize, s_path, s_tol, s_noval);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*c_validate) {
      const fmtk::SetFunction sf = fmtk::load_set_function(v_path);
      const fmtk::ValidationReport rep = fmtk::validate(sf, v_tol);
      if (!rep.ok()) {
        std::cout << rep.summary();
        return 1;
      }
      std::cout << "valid\n";
    } else if (*c_props || *c_summarize) {
      const bool summary = static_cast<bool>(*c_summarize);
      const fmtk::FuzzyMeasure mu = summary ? load(s_path, s_tol, s_noval)
                                            : load(p_path, p_tol, p_noval);
      const fmtk::MeasureReport rep = fmtk::measure_report(mu, summary ? s_tol : p_tol);
      const std::string text = report_text(rep, global);
      std::cout << "n: " << mu.n() << "\n"
                << (summary ? text : text.substr(text.find("additive:")));
    } else if (*c_index) {
      const fmtk::FuzzyMeasure mu = load(i_path, i_tol, i_noval);
      const fmtk::FeatureMatrix fm = fmtk::subset_features(mu, {i_kind});
      std::string out = "subset," + i_kind + "\n";
      for (fmtk::Mask a = 0; a < mu.size(); ++a)
        out += "\"" + fmtk::subset_label(a, i_labels) + "\"," + fmt(fm.cells[a][0], global) + "\n";
      emit(i_out, out);
    } else if (*c_integrate) {
      const fmtk::FuzzyMeasure mu = load(g_path, g_tol, g_noval);
      std::string out;
      if (g_which == "choquet" || g_which == "all")
        out += "choquet: " + fmt(fmtk::choquet(mu, g_x), global) + "\n";
      if (g_which == "sugeno" || g_which == "all")
        out += "sugeno: " + fmt(fmtk::sugeno(mu, g_x), global) + "\n";
      if (g_which == "pan" || g_which == "all")
        out += "pan: " + fmt(fmtk::pan(mu, g_x), global) + "\n";
      std::cout << out;
    } else if (*c_fit) {
      const fmtk::Dataset ds = fmtk::load_dataset(f_data);
      fmtk::Normalization nm = fmtk::default_normalization(ds);
      if (fo->count()) nm = {f_offset, f_scale};
      fmtk::FitOptions opts;
      opts.minimal = !f_no_minimal;
      std::cout << "normalization: offset " << fmt(nm.offset, global) << " scale "
                << fmt(nm.scale, global) << "\n";
      if (f_incremental) {
        const fmtk::FitTrace trace = fmtk::fit_incremental(ds, nm, opts);
        nlohmann::ordered_json manifest;
        manifest["normalization"] = {{"offset", nm.offset}, {"scale", nm.scale}};
        manifest["rounds"] = nlohmann::ordered_json::array();
        for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
          const fmtk::FitResult& r = trace.rounds[t];
          std::cout << "round " << t + 1 << ": objective " << fmt(r.objective, global) << "\n";
          if (!f_outdir.empty()) {
            std::filesystem::create_directories(f_outdir);
            const std::string stem = "round_" + std::to_string(t + 1);
            const std::string mfile = stem + ".json";
            const std::string sfile = stem + ".svg";
            const std::string rname = f_name + " round " + std::to_string(t + 1);
            fmtk::write_text_file((std::filesystem::path(f_outdir) / mfile).string(),
                                  fmtk::measure_to_json(r.measure, rname));
            fmtk::write_text_file((std::filesystem::path(f_outdir) / sfile).string(),
                                  fmtk::render_svg(fmtk::layout(r.measure, f_style), f_style));
            manifest["rounds"].push_back({{"round", t + 1},
                                          {"alternatives", t + 1},
                                          {"objective", r.objective},
                                          {"measure", mfile},
                                          {"svg", sfile}});
          }
        }
        if (!f_outdir.empty())
          fmtk::write_text_file((std::filesystem::path(f_outdir) / "manifest.json").string(),
                                manifest.dump(2) + "\n");
        if (!f_out.empty())
          fmtk::write_text_file(f_out, fmtk::measure_to_json(trace.rounds.back().measure, f_name));
      } else {
        const fmtk::FitResult r = fmtk::fit(ds, nm, opts);
        std::cout << "objective: " << fmt(r.objective, global) << "\n";
        for (std::size_t j = 0; j < ds.samples.size(); ++j)
          std::cout << "alt " << ds.samples[j].id << ": fitted " << fmt(r.fitted[j], global)
                    << " desired " << fmt(nm.apply(ds.samples[j].desired), global) << " residual "
                    << fmt(r.residuals[j], global) << "\n";
        if (!f_out.empty()) fmtk::write_text_file(f_out, fmtk::measure_to_json(r.measure, f_name));
      }
    } else if (*c_random) {
      if (r_count == 1 && r_outdir.empty()) {
        const fmtk::FuzzyMeasure mu = fmtk::random_measure(r_n, r_seed);
        emit(r_out, fmtk::measure_to_json(mu, r_name));
      } else {
        if (r_outdir.empty())
          throw std::invalid_argument("random: --count > 1 requires --out-dir");
        std::filesystem::create_directories(r_outdir);
        const fmtk::GeneratorConfig cfg{r_n, r_seed, r_count};
        const auto batch = fmtk::random_batch(cfg);
        nlohmann::ordered_json manifest;
        manifest["n"] = r_n;
        manifest["seed"] = r_seed;
        manifest["count"] = r_count;
        manifest["files"] = nlohmann::ordered_json::array();
        for (int k = 0; k < r_count; ++k) {
          char fname[32];
          std::snprintf(fname, sizeof fname, "measure_%04d.json", k);
          const std::string mname =
              r_name.empty() ? "random n=" + std::to_string(r_n) + " item=" + std::to_string(k)
                             : r_name;
          fmtk::write_text_file((std::filesystem::path(r_outdir) / fname).string(),
                                fmtk::measure_to_json(batch[k], mname));
          manifest["files"].push_back(fname);
        }
        fmtk::write_text_file((std::filesystem::path(r_outdir) / "manifest.json").string(),
                              manifest.dump(2) + "\n");
      }
    } else if (*c_render) {
      const fmtk::FuzzyMeasure mu = load(d_path, d_tol, d_noval);
      if (d_format == "dot") {
        emit(d_out, fmtk::render_dot(mu, d_style));
      } else {
        emit(d_out, fmtk::render_svg(fmtk::layout(mu, d_style), d_style));
      }
    } else if (*c_compare) {
      if (q_n != 0 && q_n != static_cast<int>(q_x.size()))
        throw std::invalid_argument("compare-integrals: --n disagrees with --x length");
      const fmtk::GeneratorConfig cfg{static_cast<int>(q_x.size()), q_seed, q_samples};
      const fmtk::IntegralComparison cmp = fmtk::integral_comparison(q_x, cfg);
      std::cout << "samples: " << cmp.rows.size() << "\n"
                << "median_choquet: " << fmt(cmp.median_choquet, global) << "\n"
                << "median_sugeno: " << fmt(cmp.median_sugeno, global) << "\n"
                << "median_pan: " << fmt(cmp.median_pan, global) << "\n"
                << "fraction_choquet_ge_sugeno: " << fmt(cmp.fraction_choquet_ge_sugeno, global)
                << "\n"
                << "fraction_sugeno_ge_pan: " << fmt(cmp.fraction_sugeno_ge_pan, global) << "\n";
      if (!q_out.empty()) {
        std::string csv = "sample,choquet,sugeno,pan\n";
        for (std::size_t k = 0; k < cmp.rows.size(); ++k)
          csv += std::to_string(k) + "," + fmt(cmp.rows[k][0], global) + "," +
                 fmt(cmp.rows[k][1], global) + "," + fmt(cmp.rows[k][2], global) + "\n";
        fmtk::write_text_file(q_out, csv);
      }
      if (!q_svg.empty()) {
        std::vector<std::vector<double>> series(3);
        for (const auto& row : cmp.rows) {
          series[0].push_back(row[0]);
          series[1].push_back(row[1]);
          series[2].push_back(row[2]);
        }
        fmtk::PlotConfig pc;
        pc.title = "choquet / sugeno / pan";
        fmtk::write_text_file(q_svg, fmtk::plot_lines(series, pc));
      }
    } else if (*c_profile) {
      fmtk::Dataset ds = fmtk::load_dataset(a_data);
      if (!a_raw) {
        const fmtk::Normalization nm = fmtk::default_normalization(ds);
        std::cout << "normalization: offset " << fmt(nm.offset, global) << " scale "
                  << fmt(nm.scale, global) << "\n";
        for (auto& s : ds.samples) {
          for (auto& v : s.scores) v = nm.apply(v);
          s.desired = nm.apply(s.desired);
        }
      }
      const fmtk::GeneratorConfig cfg{ds.n, a_seed, a_samples};
      const fmtk::AlternativesProfile prof = fmtk::alternatives_choquet_profile(ds, cfg);
      std::cout << "samples: " << a_samples << "\n";
      for (std::size_t j = 0; j < ds.samples.size(); ++j)
        std::cout << "median " << ds.samples[j].id << ": " << fmt(prof.medians[j], global) << "\n";
      if (!a_out.empty()) {
        std::string csv = "sample";
        for (const auto& s : ds.samples) csv += "," + s.id;
        csv += "\n";
        for (int k = 0; k < a_samples; ++k) {
          csv += std::to_string(k);
          for (std::size_t j = 0; j < prof.series.size(); ++j)
            csv += "," + fmt(prof.series[j][k], global);
          csv += "\n";
        }
        fmtk::write_text_file(a_out, csv);
      }
      if (!a_svg.empty()) {
        std::vector<std::vector<double>> per_sample(a_samples);
        for (int k = 0; k < a_samples; ++k)
          for (std::size_t j = 0; j < prof.series.size(); ++j)
            per_sample[k].push_back(prof.series[j][k]);
        fmtk::PlotConfig pc;
        pc.title = "alternatives under random measures";
        fmtk::write_text_file(a_svg, fmtk::plot_lines(per_sample, pc));
      }
    } else if (*c_cluster) {
      const fmtk::FuzzyMeasure mu = load(k_path, k_tol, k_noval);
      fmtk::FeatureMatrix fm = fmtk::subset_features(mu, k_features);
      if (k_labels != fmtk::LabelMode::canonical)
        for (fmtk::Mask a = 0; a < mu.size(); ++a)
          fm.row_labels[a] = fmtk::subset_label(a, k_labels);
      const fmtk::Dendrogram dend = fmtk::hierarchical_cluster(fm);
      std::string csv = "step,left,right,height,size\n";
      for (std::size_t s = 0; s < dend.merges.size(); ++s)
        csv += std::to_string(s) + "," + std::to_string(dend.merges[s].left) + "," +
               std::to_string(dend.merges[s].right) + "," + fmt(dend.merges[s].height, global) +
               "," + std::to_string(dend.merges[s].size) + "\n";
      emit(k_out, csv);
      std::cout << "leaf_order:";
      for (int leaf : dend.leaf_order) std::cout << " " << leaf;
      std::cout << "\n";
      if (!k_svg.empty())
        fmtk::write_text_file(k_svg, fmtk::plot_heatmap(fmtk::standardize(fm), dend));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

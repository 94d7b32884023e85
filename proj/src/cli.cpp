#include "checkerdisc/cli.hpp"

#include "checkerdisc/certify.hpp"
#include "checkerdisc/coloring.hpp"
#include "checkerdisc/geometry.hpp"
#include "checkerdisc/io.hpp"
#include "checkerdisc/parallel.hpp"
#include "checkerdisc/polygon.hpp"
#include "checkerdisc/search.hpp"
#include "checkerdisc/shapes.hpp"
#include "checkerdisc/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace checkerdisc {

using nlohmann::json;

namespace {

/// Options shared by the commands that read a coloring.
struct ColoringSource {
  std::string path;
  std::string kind = "random";
  Index n = 32;
  std::uint64_t seed = 1;
  std::string axis = "x";
  Index period = 1;

  void attach(CLI::App* app, bool with_file = true) {
    if (with_file) app->add_option("--coloring", path, "Coloring file (overrides --kind)");
    app->add_option("--kind", kind, "constant, chessboard, stripes or random")->capture_default_str();
    app->add_option("--n", n, "Side length")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "Seed for random colorings")->capture_default_str();
    app->add_option("--axis", axis, "Stripe axis (x or y)")->capture_default_str()->check(CLI::IsMember({"x", "y"}));
    app->add_option("--period", period, "Stripe period")->capture_default_str()->check(CLI::PositiveNumber);
  }

  [[nodiscard]] ColoringSpec spec() const {
    ColoringSpec s;
    s.kind = parse_coloring_kind(kind);
    s.axis = axis == "y" ? Axis::y : Axis::x;
    s.period = period;
    s.seed = seed;
    return s;
  }

  [[nodiscard]] Coloring load() const { return path.empty() ? generate(spec(), n) : load_file(path); }
};

PolyShape load_shape(const std::string& name) {
  if (name == "square") return PolyShape::unit_square();
  if (name == "triangle") return PolyShape::unit_triangle();
  return load_polygon_file(name);
}

/// Resolved option values of one subcommand, for sidecars.
json describe(const CLI::App* app, const std::vector<std::string>& args) {
  json options = json::object();
  for (const CLI::Option* opt : app->get_options()) {
    const std::string key = opt->get_single_name();
    if (key.empty() || key == "help") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      options[key] = res.size() == 1 ? json(res.front()) : json(res);
    } else if (!opt->get_default_str().empty()) {
      options[key] = opt->get_default_str();
    }
  }
  return {{"command", app->get_name()}, {"argv", args}, {"options", options}};
}

void write_sidecar(const std::string& path, json config, const json& extra = json::object()) {
  for (const auto& [k, v] : extra.items()) config[k] = v;
  write_atomic(path + ".json", config.dump(2) + "\n");
}

std::string circle_csv(const std::vector<std::vector<double>>& rows, const std::string& header) {
  std::string out = header + "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_shortest(row[i]);
    out += "\n";
  }
  return out;
}

Circle circle_from(const std::vector<double>& v) {
  if (v.size() != 3) throw std::invalid_argument("circle needs x,y,t");
  if (!(v[2] > 0.0)) throw std::invalid_argument("circle radius must be positive");
  return Circle{Vec2(v[0], v[1]), v[2]};
}

Placement placement_from(const std::vector<double>& v) {
  if (v.size() != 4) throw std::invalid_argument("placement needs x,y,r,tau");
  Placement p;
  p.x = Vec2(v[0], v[1]);
  p.r = v[2];
  p.tau = v[3];
  return p;
}

std::vector<double> parse_t_set(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("radius list is empty");
  return v;
}

}  // namespace

std::string format_disc_value(double v) {
  if (std::abs(v) < 0.5e-12) return "0.000000000000";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.12g", v);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrepancy of checkerboard colorings along circles, arcs and polygons", "checkerdisc"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);

  // gen
  CLI::App* gen = app.add_subcommand("gen", "Write a coloring file");
  ColoringSource gen_src;
  gen_src.attach(gen, false);
  std::string gen_out;
  gen->add_option("-o,--output", gen_out, "Output path")->required();

  // disc
  CLI::App* disc = app.add_subcommand("disc", "Print one discrepancy value");
  ColoringSource disc_src;
  disc_src.attach(disc);
  std::vector<double> disc_circle, disc_window, disc_disk, disc_place;
  std::string disc_polygon, disc_mode = "region";
  auto* opt_circle = disc->add_option("--circle", disc_circle, "x,y,t")->delimiter(',')->expected(3);
  disc->add_option("--window", disc_window, "lo,hi arc window for --circle")->delimiter(',')->expected(2);
  auto* opt_disk = disc->add_option("--disk", disc_disk, "x,y,t")->delimiter(',')->expected(3);
  auto* opt_poly = disc->add_option("--polygon", disc_polygon, "square, triangle or polygon JSON file");
  disc->add_option("--place", disc_place, "x,y,r,tau placement of --polygon")->delimiter(',')->expected(4);
  disc->add_option("--mode", disc_mode, "region or boundary")->capture_default_str();
  opt_circle->excludes(opt_disk)->excludes(opt_poly);
  opt_disk->excludes(opt_poly);

  // field
  CLI::App* field = app.add_subcommand("field", "Grid of circle discrepancies as CSV and PGM");
  ColoringSource field_src;
  field_src.attach(field);
  double field_t = 1.0, field_step = 0.25;
  std::vector<double> field_range;
  std::string field_out;
  field->add_option("--t", field_t, "Radius")->capture_default_str()->check(CLI::PositiveNumber);
  field->add_option("--step", field_step, "Center lattice step")->capture_default_str()->check(CLI::PositiveNumber);
  field->add_option("--range", field_range, "lo,hi center range (default [-t, n+t])")->delimiter(',')->expected(2);
  field->add_option("-o,--output", field_out, "Output prefix (.csv, .pgm, .pgm.json)")->required();

  // spectrum
  CLI::App* spectrum = app.add_subcommand("spectrum", "L2 circle discrepancy and Fourier transform values");
  ColoringSource spec_src;
  spec_src.attach(spectrum);
  double spec_t = 1.0;
  std::string spec_method = "fourier", spec_out;
  std::vector<double> spec_xi;
  spectrum->add_option("--t", spec_t, "Radius")->capture_default_str()->check(CLI::PositiveNumber);
  spectrum->add_option("--method", spec_method, "fourier, spatial or both")
      ->capture_default_str()
      ->check(CLI::IsMember({"fourier", "spatial", "both"}));
  spectrum->add_option("--xi", spec_xi, "Also print f-hat at xi1,xi2")->delimiter(',')->expected(2);
  spectrum->add_option("-o,--output", spec_out, "JSON output path (default: standard output)");

  // certify
  CLI::App* certify = app.add_subcommand("certify", "Run numerical checks");
  ColoringSource cert_src;
  cert_src.attach(certify);
  std::vector<std::string> cert_checks;
  double cert_rmax = 100.0, cert_rlo = 1.0, cert_rhi = 1e4, cert_step = 0.0, cert_w = 0.05, cert_t = 1.0,
         cert_a = 2.0;
  std::string cert_shape = "square", cert_out;
  std::vector<double> cert_radii = {4, 8, 16, 32, 64};
  certify->add_option("--check", cert_checks,
                      "lemma-double, bessel-error, lowerestimate, corollary, poincare, holes, fourier-ks")
      ->required()
      ->check(CLI::IsMember(
          {"lemma-double", "bessel-error", "lowerestimate", "corollary", "poincare", "holes", "fourier-ks"}));
  certify->add_option("--rmax", cert_rmax, "Upper radius for lemma-double and lowerestimate")->capture_default_str();
  certify->add_option("--r-lo", cert_rlo, "Lower radius for bessel-error")->capture_default_str();
  certify->add_option("--r-hi", cert_rhi, "Upper radius for bessel-error")->capture_default_str();
  certify->add_option("--step", cert_step, "Scan step (0 = check default)")->capture_default_str();
  certify->add_option("--w", cert_w, "Annulus half-width")->capture_default_str();
  certify->add_option("--t", cert_t, "Radius for coloring checks")->capture_default_str();
  certify->add_option("--shape", cert_shape, "square, triangle or polygon JSON file")->capture_default_str();
  certify->add_option("--radii", cert_radii, "Annulus inner radii for fourier-ks")->delimiter(',');
  certify->add_option("--A", cert_a, "Annulus ratio for fourier-ks")->capture_default_str();
  certify->add_option("-o,--output", cert_out, "JSON output path (default: standard output)");

  // search
  CLI::App* search = app.add_subcommand("search", "Maximal discrepancy witnesses");
  ColoringSource search_src;
  search_src.attach(search);
  std::string search_mode = "circle", search_out;
  std::vector<double> search_t = {1.0};
  SearchBudget budget;
  std::size_t anneal_iters = 10000;
  AnnealSpec anneal;
  std::string anneal_out;
  search->add_option("--mode", search_mode, "circle, circle-contained, arc or adversarial")
      ->capture_default_str()
      ->check(CLI::IsMember({"circle", "circle-contained", "arc", "adversarial"}));
  search->add_option("--t", search_t, "Radius (adversarial: comma-separated radius set)")->delimiter(',');
  search->add_option("--grid-step", budget.grid_step, "Coarse center step")->capture_default_str();
  search->add_option("--refine-top", budget.refine_top, "Candidates refined")->capture_default_str();
  search->add_option("--min-step", budget.min_step, "Pattern search resolution")->capture_default_str();
  search->add_option("--iters", anneal_iters, "Annealing iterations")->capture_default_str();
  search->add_option("--t0", anneal.t0, "Initial temperature")->capture_default_str();
  search->add_option("--cooling", anneal.cooling, "Cooling factor")->capture_default_str();
  search->add_option("--probe-step", anneal.probe_step, "Annealing probe step")->capture_default_str();
  search->add_option("--coloring-out", anneal_out, "Adversarial coloring output path");
  search->add_option("-o,--output", search_out, "CSV output path (default: standard output)");

  // scaling
  CLI::App* scaling = app.add_subcommand("scaling", "Growth of the maximal discrepancy with t");
  std::string scale_family = "random", scale_mode = "arc", scale_out;
  std::vector<double> scale_t = {1, 2, 4, 8};
  ScalingSpec scale_spec;
  std::uint64_t scale_seed = 1;
  std::size_t scale_iters = 5000;
  scaling->add_option("--family", scale_family, "constant, chessboard, random or adversarial")
      ->capture_default_str()
      ->check(CLI::IsMember({"constant", "chessboard", "random", "adversarial"}));
  scaling->add_option("--mode", scale_mode, "arc or circle")->capture_default_str()->check(CLI::IsMember({"arc", "circle"}));
  scaling->add_option("--t-list", scale_t, "Increasing radii")->delimiter(',');
  scaling->add_option("--n-over-t", scale_spec.n_over_t, "n / t (arc) or n / t^2 (circle)")->capture_default_str();
  scaling->add_option("--seed", scale_seed, "Base seed")->capture_default_str();
  scaling->add_option("--grid-step", scale_spec.search.grid_step, "Coarse center step")->capture_default_str();
  scaling->add_option("--max-evals", scale_spec.max_evaluations, "Evaluation budget (0 = unlimited)")
      ->capture_default_str();
  scaling->add_option("--iters", scale_iters, "Annealing iterations for the adversarial family")->capture_default_str();
  scaling->add_option("-o,--output", scale_out, "CSV output path (default: standard output)");

  // shapes
  CLI::App* shapes = app.add_subcommand("shapes", "Polygon and polyline discrepancies");
  ColoringSource shape_src;
  shape_src.attach(shapes);
  std::string shape_name = "square", shape_mode = "region", shape_what = "best", shape_out;
  std::vector<double> shape_range = {0.2, 0.25};
  std::optional<double> shape_tau;
  double shape_x_step = 0.5;
  int shape_angles = 24;
  shapes->add_option("--shape", shape_name, "square, triangle or polygon JSON file")->capture_default_str();
  shapes->add_option("--mode", shape_mode, "region or boundary")->capture_default_str();
  shapes->add_option("--what", shape_what, "best, average or fourier")
      ->capture_default_str()
      ->check(CLI::IsMember({"best", "average", "fourier"}));
  shapes->add_option("--radial", shape_range, "lo,hi dilation range as fractions of n")->delimiter(',')->expected(2);
  shapes->add_option("--tau", shape_tau, "Fix the rotation angle");
  shapes->add_option("--x-step", shape_x_step, "Translation step")->capture_default_str();
  shapes->add_option("--angles", shape_angles, "Rotation samples")->capture_default_str();
  shapes->add_option("-o,--output", shape_out, "CSV output path (default: standard output)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    set_thread_count(threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency()));

    auto emit = [&](const std::string& path, const std::string& content, const CLI::App* sub,
                    const json& extra = json::object()) {
      if (path.empty()) {
        out << content;
        return;
      }
      write_atomic(path, content);
      write_sidecar(path, describe(sub, args), extra);
    };

    if (*gen) {
      const Coloring f = generate(gen_src.spec(), gen_src.n);
      emit(gen_out, save(f), gen);
      return 0;
    }

    if (*disc) {
      const Coloring f = disc_src.load();
      double value = 0.0;
      if (!disc_circle.empty()) {
        std::optional<AngleWindow> window;
        if (!disc_window.empty()) window = AngleWindow{disc_window[0], disc_window[1]};
        value = circle_discrepancy(f, circle_from(disc_circle), window);
      } else if (!disc_disk.empty()) {
        value = disk_discrepancy(f, circle_from(disc_disk));
      } else if (!disc_polygon.empty()) {
        const Placement p = disc_place.empty() ? Placement{} : placement_from(disc_place);
        value = shape_discrepancy(f, load_shape(disc_polygon), parse_shape_mode(disc_mode), p);
      } else {
        throw std::invalid_argument("one of --circle, --disk or --polygon is required");
      }
      out << format_disc_value(value) << "\n";
      return 0;
    }

    if (*field) {
      const Coloring f = field_src.load();
      const double n = static_cast<double>(f.n());
      const double lo = field_range.empty() ? -field_t : field_range[0];
      const double hi = field_range.empty() ? n + field_t : field_range[1];
      if (!(hi > lo)) throw std::invalid_argument("empty center range");
      const auto count = static_cast<std::size_t>(std::floor((hi - lo) / field_step + 1e-9)) + 1;
      std::vector<std::vector<double>> grid = parallel_map<std::vector<double>>(count, [&](std::size_t b) {
        std::vector<double> row(count);
        for (std::size_t a = 0; a < count; ++a) {
          const Vec2 x(lo + static_cast<double>(a) * field_step, lo + static_cast<double>(b) * field_step);
          row[a] = circle_discrepancy(f, Circle{x, field_t});
        }
        return row;
      });
      std::vector<std::vector<double>> rows;
      double vmin = INFINITY, vmax = -INFINITY;
      for (std::size_t b = 0; b < count; ++b) {
        for (std::size_t a = 0; a < count; ++a) {
          const double v = grid[b][a];
          vmin = std::min(vmin, v);
          vmax = std::max(vmax, v);
          rows.push_back({lo + static_cast<double>(a) * field_step, lo + static_cast<double>(b) * field_step, v});
        }
      }
      std::string pgm = "P5\n" + std::to_string(count) + " " + std::to_string(count) + "\n255\n";
      // Top image row holds the largest y.
      for (std::size_t b = count; b-- > 0;) {
        for (std::size_t a = 0; a < count; ++a) {
          const double s = vmax > vmin ? (grid[b][a] - vmin) / (vmax - vmin) : 0.0;
          pgm.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * s))));
        }
      }
      const json scaling = {{"min", vmin}, {"max", vmax}, {"pixel", "round(255 * (value - min) / (max - min))"},
                            {"rows", "top row is the largest y"}, {"lattice_lo", lo}, {"lattice_step", field_step},
                            {"side", count}};
      emit(field_out + ".csv", circle_csv(rows, "x,y,discrepancy"), field);
      emit(field_out + ".pgm", pgm, field, {{"scaling", scaling}});
      return 0;
    }

    if (*spectrum) {
      const Coloring f = spec_src.load();
      json res = {{"n", f.n()}, {"t", spec_t}};
      auto record = [&](const char* key, const Estimate& e) {
        res[key] = {{"value", e.value}, {"error", e.error}, {"converged", e.converged}};
      };
      if (spec_method != "spatial") record("fourier", l2_discrepancy_fourier(f, spec_t));
      if (spec_method != "fourier") record("spatial", l2_discrepancy_spatial(f, spec_t));
      if (!spec_xi.empty()) {
        const Complex v = fhat(f, Vec2(spec_xi[0], spec_xi[1]));
        res["fhat"] = {{"xi", spec_xi}, {"re", v.real()}, {"im", v.imag()}};
      }
      emit(spec_out, res.dump(2) + "\n", spectrum);
      bool ok = true;
      for (const char* key : {"fourier", "spatial"})
        if (res.contains(key)) ok = ok && res[key]["converged"].get<bool>();
      return ok ? 0 : 1;
    }

    if (*certify) {
      json reports = json::array();
      bool all = true;
      for (const std::string& check : cert_checks) {
        CertReport rep;
        if (check == "lemma-double") {
          rep = cert_step > 0 ? check_lemma_double(cert_rmax, cert_step) : check_lemma_double(cert_rmax);
        } else if (check == "bessel-error") {
          rep = cert_step > 0 ? check_bessel_error(cert_rlo, cert_rhi, cert_step) : check_bessel_error(cert_rlo, cert_rhi);
        } else if (check == "lowerestimate") {
          const ExclusionSet e = build_exclusion(cert_w, cert_rmax);
          rep = cert_step > 0 ? check_lemma_lowerestimate(e, cert_rmax, cert_step) : check_lemma_lowerestimate(e, cert_rmax);
        } else if (check == "corollary") {
          rep = check_corollary_tor2t(cert_src.load(), cert_t);
        } else if (check == "poincare") {
          const Coloring f = cert_src.load();
          const ExclusionSet e = build_exclusion(cert_w, cert_t + 1.0);
          rep = check_poincare(fhat_field(f), scaled_centers(e, cert_t), cert_w / cert_t);
        } else if (check == "holes") {
          rep = check_estimate_with_holes(cert_src.load(), cert_t, build_exclusion(cert_w, cert_t + 1.0));
        } else {
          rep = check_lemma_fourierKS(load_shape(cert_shape), cert_radii, cert_a);
        }
        all = all && rep.pass;
        reports.push_back(rep.to_json());
      }
      emit(cert_out, reports.dump(2) + "\n", certify);
      return all ? 0 : 1;
    }

    if (*search) {
      std::string csv = search_csv_header() + "\n";
      json extra = json::object();
      if (search_mode == "adversarial") {
        const AdversarialResult res =
            adversarial_search(search_src.n, parse_t_set(search_t), anneal_iters, search_src.seed, anneal);
        extra = {{"initial_objective", res.initial_objective}, {"objective", res.objective}, {"accepted", res.accepted}};
        for (double t : search_t) {
          SearchResult r = max_circle(res.best, t, false, budget);
          r.seed = search_src.seed;
          csv += search_csv_row(t, r) + "\n";
        }
        if (!anneal_out.empty()) {
          write_atomic(anneal_out, save(res.best));
          write_sidecar(anneal_out, describe(search, args), extra);
        }
      } else {
        const Coloring f = search_src.load();
        for (double t : parse_t_set(search_t)) {
          SearchResult r = search_mode == "arc" ? max_arc(f, t, budget)
                                                : max_circle(f, t, search_mode == "circle-contained", budget);
          r.seed = search_src.seed;
          csv += search_csv_row(t, r) + "\n";
        }
      }
      emit(search_out, csv, search, extra);
      return 0;
    }

    if (*scaling) {
      scale_spec.mode = scale_mode == "arc" ? ScalingMode::arc : ScalingMode::circle;
      ColoringFamily family;
      if (scale_family == "constant") {
        family = [](Index n, std::uint64_t) { return generate_constant(n); };
      } else if (scale_family == "chessboard") {
        family = [](Index n, std::uint64_t) { return generate_chessboard(n); };
      } else if (scale_family == "random") {
        family = [](Index n, std::uint64_t s) { return generate_random(n, s); };
      } else {
        family = [scale_iters](Index n, std::uint64_t s) {
          const double t = static_cast<double>(n);
          return adversarial_coloring(n, {t}, scale_iters, s);
        };
      }
      const ScalingRecord rec = scaling_experiment(scale_family, family, scale_t, scale_spec, scale_seed);
      std::string csv = search_csv_header() + ",n\n";
      for (const ScalingPoint& p : rec.points) csv += search_csv_row(p.t, p.witness) + "," + std::to_string(p.n) + "\n";
      json extra = {{"family", rec.family}, {"n_over_t", rec.n_over_t}, {"fitted", rec.fitted},
                    {"slope", rec.slope},   {"slope_stderr", rec.slope_stderr}, {"band", {rec.band_lo, rec.band_hi}},
                    {"partial", rec.partial}};
      emit(scale_out, csv, scaling, extra);
      if (scale_out.empty()) err << extra.dump() << "\n";
      return rec.partial ? 1 : 0;
    }

    if (*shapes) {
      const Coloring f = shape_src.load();
      const PolyShape shape = load_shape(shape_name);
      const ShapeMode mode = parse_shape_mode(shape_mode);
      const RadialRange range{shape_range[0], shape_range[1]};
      std::string csv;
      bool ok = true;
      if (shape_what == "best") {
        PlacementSearch ps;
        ps.range = range;
        ps.x_step = shape_x_step;
        ps.angles = shape_angles;
        ps.fixed_tau = shape_tau;
        const PlacementResult r = best_placement(f, shape, mode, ps);
        csv = "mode,value,x,y,r,tau,grid_max,grid_rms,evaluations\n" + shape_mode + "," + format_shortest(r.value) + "," +
              format_shortest(r.placement.x.x()) + "," + format_shortest(r.placement.x.y()) + "," +
              format_shortest(r.placement.r) + "," + format_shortest(r.placement.tau) + "," +
              format_shortest(r.grid_max) + "," + format_shortest(r.grid_rms) + "," + std::to_string(r.evaluations) +
              "\n";
      } else {
        Estimate e;
        if (shape_what == "average") {
          AverageMesh mesh;
          mesh.angles = shape_angles;
          mesh.fixed_tau = shape_tau;
          e = averaged_l2(f, shape, mode, range, mesh);
        } else {
          e = averaged_l2_fourier(f, shape, mode, range);
        }
        ok = e.converged;
        csv = "mode,method,value,error,converged\n" + shape_mode + "," + shape_what + "," + format_shortest(e.value) +
              "," + format_shortest(e.error) + "," + (e.converged ? "1" : "0") + "\n";
      }
      emit(shape_out, csv, shapes);
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace checkerdisc

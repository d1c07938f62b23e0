#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>

#include "diracep/bloch.hpp"
#include "diracep/cli.hpp"
#include "diracep/ep_analysis.hpp"
#include "diracep/errors.hpp"
#include "diracep/family.hpp"
#include "diracep/isospectral.hpp"

namespace diracep::cli {

namespace {

using json = nlohmann::ordered_json;

const std::array<std::string, 5> kAxisNames{"tau", "k", "g", "dminus", "d3"};

double axis_default(std::string_view name) { return name == "tau" ? 1.0 : 0.0; }

struct AxisArgs {
  std::string value;
  std::string range;
};

struct Args {
  std::string out;
  std::string format;
  double tol_degeneracy = 1e-8;
  double tol_rank = 1e-8;
  unsigned threads = 1;
  std::string config;
  bool gnuplot_stub = false;

  std::string model = "h3";
  std::string family_a, family_b;
  double v0 = 1.0;
  int trunc = 8;
  std::string shifts = "1,2,3";
  double dplus = 0.0;
  std::map<std::string, AxisArgs> axes;

  std::string point;
  std::string band_pair = "lowest";
  double probe_radius = 0.02;
  int rays = 8;
  std::string direction;
  double rmin = 1e-5;
  double rmax = 0.02;
  int nradii = 12;
  std::string samples;
  std::string sections;
  double tilt_s = std::numbers::sqrt2 - 1.0;
  double offset_d = 1.0 / 40.0;

  double tol = 1e-12;
  double find_tol = 1e-6;
  bool no_degeneracies = false;

  double eps_min = 1e-6;
  double eps_max = 1e-3;
  int neps = 16;
};

json cjson(complex w) { return json{{"re", w.real()}, {"im", w.imag()}}; }

json dir_json(std::array<double, 2> d) { return json::array({d[0], d[1]}); }

void add_common(CLI::App* sub, Args& a) {
  sub->add_option("--out", a.out, "Output file (stdout when absent)");
  sub->add_option("--format", a.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--tol-degeneracy", a.tol_degeneracy, "Relative eigenvalue clustering tolerance")
      ->check(CLI::PositiveNumber);
  sub->add_option("--tol-rank", a.tol_rank, "Relative singular value cutoff")->check(CLI::PositiveNumber);
  sub->add_option("--threads", a.threads, "Worker threads for sweeps")->check(CLI::Range(1u, 256u));
  sub->add_option("--config", a.config, "key=value file; flags on the command line win");
  sub->add_flag("--gnuplot-stub", a.gnuplot_stub, "Also write a gnuplot script next to the CSV");
}

void add_model_params(CLI::App* sub, Args& a) {
  sub->add_option("--v0", a.v0, "Potential strength V0")->check(CLI::PositiveNumber);
  sub->add_option("--trunc", a.trunc, "Bloch truncation M (bands m=-M..M)")->check(CLI::Range(2, 200));
  sub->add_option("--shifts", a.shifts, "Block stack energies, comma separated");
  sub->add_option("--dplus", a.dplus, "Two-band Delta_+");
}

void add_model(CLI::App* sub, Args& a) {
  sub->add_option("--model", a.model, "Model id")->check(CLI::IsMember(family_ids()));
  add_model_params(sub, a);
}

void add_axes(CLI::App* sub, Args& a) {
  for (const auto& name : kAxisNames) {
    auto& ax = a.axes[name];
    sub->add_option("--" + name, ax.value, "Fixed " + name);
    sub->add_option("--" + name + "-range", ax.range, "Swept " + name + " as min:max:count");
  }
}

void add_point(CLI::App* sub, Args& a) {
  sub->add_option("--point", a.point, "Parameter point, e.g. tau=1,k=0");
  sub->add_option("--band-pair", a.band_pair, "lowest, i,j (1-based) or near:<re omega>");
}

FamilyOptions family_options(const Args& a) {
  FamilyOptions fo;
  fo.v0 = a.v0;
  fo.trunc_m = a.trunc;
  fo.delta_plus = a.dplus;
  fo.shifts.clear();
  std::string_view s = a.shifts;
  while (!s.empty()) {
    const auto comma = s.find(',');
    fo.shifts.push_back(parse_double(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return fo;
}

// Axis options that do not belong to the family are rejected.
void check_axis_options(const HamiltonianFamily& f, const Args& a) {
  for (const auto& [name, ax] : a.axes) {
    if ((!ax.value.empty() || !ax.range.empty()) && f.axis_index(name) < 0) {
      throw InvalidArgument("--" + name + " does not apply to model " + f.id + " (axes " + f.axes[0] +
                            ", " + f.axes[1] + ")");
    }
    if (!ax.value.empty() && !ax.range.empty()) {
      throw InvalidArgument("--" + name + " and --" + name + "-range are exclusive");
    }
  }
}

Axis resolve_axis(const std::string& name, const Args& a, std::optional<Range> fallback = {}) {
  const auto& ax = a.axes.at(name);
  if (!ax.range.empty()) {
    const Range r = parse_range(ax.range);
    return {name, linspace(r.min, r.max, r.count)};
  }
  if (!ax.value.empty()) return {name, {parse_double(ax.value)}};
  if (fallback) return {name, linspace(fallback->min, fallback->max, fallback->count)};
  return {name, {axis_default(name)}};
}

ParamPoint resolve_point(const HamiltonianFamily& f, const Args& a) {
  std::array<double, 2> xy{};
  std::map<std::string, double> given;
  if (!a.point.empty()) given = parse_assignments(a.point);
  for (const auto& [name, v] : given) {
    if (f.axis_index(name) < 0) throw InvalidArgument("--point names unknown axis '" + name + "' for model " + f.id);
  }
  for (int i = 0; i < 2; ++i) {
    const auto& name = f.axes[static_cast<std::size_t>(i)];
    if (auto it = given.find(name); it != given.end()) {
      xy[static_cast<std::size_t>(i)] = it->second;
    } else if (!a.axes.at(name).range.empty()) {
      throw InvalidArgument("--" + name + "-range is not valid for a single point");
    } else if (!a.axes.at(name).value.empty()) {
      xy[static_cast<std::size_t>(i)] = parse_double(a.axes.at(name).value);
    } else {
      xy[static_cast<std::size_t>(i)] = axis_default(name);
    }
  }
  return {xy[0], xy[1]};
}

BandSelection parse_band_pair(const std::string& text) {
  if (text == "lowest") return BandSelection::lowest();
  if (text.rfind("near:", 0) == 0) return BandSelection::nearest(parse_double(text.substr(5)));
  const auto p = parse_pair(text);
  if (p[0] != std::floor(p[0]) || p[1] != std::floor(p[1])) {
    throw InvalidArgument("--band-pair needs integer indices");
  }
  return BandSelection::bands(static_cast<int>(p[0]), static_cast<int>(p[1]));
}

AnalysisConfig analysis_config(const Args& a) {
  AnalysisConfig cfg;
  cfg.degeneracy_relative_tol = a.tol_degeneracy;
  cfg.rank_tol = a.tol_rank;
  cfg.bands = parse_band_pair(a.band_pair);
  cfg.probe_radius = a.probe_radius;
  cfg.ray_count = a.rays;
  cfg.r_min = a.rmin;
  cfg.r_max = a.rmax;
  cfg.n_radii = a.nradii;
  return cfg;
}

// Echo of every option in registration order; paths and thread count are
// left out so the same settings give the same bytes.
json config_echo(const CLI::App* sub) {
  json echo;
  echo["command"] = sub->get_name();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "out" || name == "config" || name == "threads" || name == "samples" ||
        name == "sections") {
      continue;
    }
    if (opt->get_expected_min() == 0) {
      echo[name] = opt->count() > 0 && opt->as<bool>();
    } else if (opt->count() > 0) {
      echo[name] = opt->as<std::string>();
    } else {
      echo[name] = opt->get_default_str();
    }
  }
  echo["seedless"] = true;
  return echo;
}

void emit(const Args& a, const std::string& content, std::ostream& out) {
  if (a.out.empty()) {
    out << content;
  } else {
    write_atomic(a.out, content);
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string format_of(const Args& a, const char* fallback) { return a.format.empty() ? fallback : a.format; }

void require_json(const Args& a, const char* command) {
  if (format_of(a, "json") != "json") {
    throw InvalidArgument(std::string(command) + " writes json only");
  }
}

int cmd_bands(const CLI::App* sub, const Args& a, std::ostream& out) {
  const auto family = make_family(a.model, family_options(a));
  check_axis_options(family, a);
  const Axis first = resolve_axis(family.axes[0], a);
  const Axis second = resolve_axis(family.axes[1], a);
  if (first.values.size() < 2 && second.values.size() < 2) {
    throw InvalidArgument("bands needs at least one --<axis>-range");
  }
  SweepOptions so;
  so.threads = a.threads;
  so.degeneracy_relative_tol = a.tol_degeneracy;
  const SweepResult sweep = sweep_family(family, first, second, so);

  const std::string format = format_of(a, "csv");
  if (format == "csv") {
    emit(a, bands_csv(sweep), out);
    if (a.gnuplot_stub && !a.out.empty()) {
      const bool two_d = first.values.size() > 1 && second.values.size() > 1;
      std::string gp = "set datafile separator ','\n";
      gp += two_d ? "splot '" + a.out + "' every ::1 using 1:2:4 with points pt 7 ps 0.3\n"
                  : "plot '" + a.out + "' every ::1 using 1:3 with points pt 7 ps 0.3\n";
      write_atomic(a.out + ".gp", gp);
    }
    return ok;
  }

  json j;
  j["config"] = config_echo(sub);
  j["model"] = family.id;
  j["axes"] = json::object();
  j["axes"][first.name] = first.values;
  j["axes"][second.name] = second.values;
  j["n_bands"] = sweep.n_bands;
  json bands = json::array();
  for (std::size_t b = 0; b < sweep.n_bands; ++b) {
    std::vector<double> re, im;
    for (const complex& w : sweep.bands[b]) {
      re.push_back(w.real());
      im.push_back(w.imag());
    }
    bands.push_back(json{{"band", b + 1}, {"re", re}, {"im", im}});
  }
  j["bands"] = std::move(bands);
  std::vector<std::size_t> near;
  for (std::size_t p = 0; p < sweep.near_degenerate.size(); ++p) {
    if (sweep.near_degenerate[p]) near.push_back(p);
  }
  j["near_degenerate_points"] = near;
  emit(a, dump(j), out);
  return ok;
}

json rays_json(const ConeFit& fit) {
  json rays = json::array();
  for (const auto& r : fit.rays) {
    rays.push_back(json{{"direction", dir_json(r.direction)},
                        {"exceptional_line", r.exceptional_line},
                        {"exponent", r.exponent},
                        {"exponent_residual", r.exponent_residual},
                        {"slope_upper", r.slope_upper},
                        {"slope_lower", r.slope_lower},
                        {"curvature_upper", r.curvature_upper},
                        {"curvature_lower", r.curvature_lower},
                        {"tilt", r.tilt},
                        {"slope_residual", r.slope_residual}});
  }
  return rays;
}

json location_json(const HamiltonianFamily& f, ParamPoint p) {
  json loc;
  loc[f.axes[0]] = p.x;
  loc[f.axes[1]] = p.y;
  return loc;
}

int cmd_classify(const CLI::App* sub, const Args& a, std::ostream& out) {
  require_json(a, "classify");
  const auto family = make_family(a.model, family_options(a));
  check_axis_options(family, a);
  const ParamPoint point = resolve_point(family, a);
  const DegeneracyReport rep = classify_degeneracy(family, point, analysis_config(a));

  double mean = 0.0, var = 0.0;
  int n = 0;
  for (const auto& r : rep.cone.rays) {
    if (!r.exceptional_line && std::isfinite(r.exponent)) {
      mean += r.exponent;
      ++n;
    }
  }
  if (n > 0) mean /= n;
  for (const auto& r : rep.cone.rays) {
    if (!r.exceptional_line && std::isfinite(r.exponent)) var += (r.exponent - mean) * (r.exponent - mean);
  }
  const double spread = n > 1 ? std::sqrt(var / (n - 1)) : 0.0;

  json j;
  j["config"] = config_echo(sub);
  j["family"] = rep.family;
  j["location"] = location_json(family, rep.location);
  j["omega0"] = cjson(rep.omega0);
  j["bands"] = rep.bands;
  j["gap"] = rep.gap;
  j["algebraic_multiplicity"] = rep.algebraic_multiplicity;
  j["geometric_multiplicity"] = rep.geometric_multiplicity;
  j["coalescence_overlap"] = rep.coalescence_overlap;
  if (rep.eigenvector.size() > 0) {
    json v = json::array();
    for (Eigen::Index i = 0; i < rep.eigenvector.size(); ++i) v.push_back(cjson(rep.eigenvector(i)));
    j["eigenvector"] = std::move(v);
  } else {
    j["eigenvector"] = nullptr;
  }
  j["locally_real"] = rep.reality.locally_real;
  j["max_abs_im"] = rep.reality.max_abs_im;
  j["branch_cut_detected"] = rep.reality.branch_cut_detected;
  j["node_type"] = std::string(node_type_name(rep.reality.node_type));
  j["dispersion_exponent"] = json{{"mean", n > 0 ? mean : std::nan("")},
                                  {"uncertainty", spread},
                                  {"min", rep.exponent_min},
                                  {"max", rep.exponent_max}};
  j["line_rays"] = rep.line_rays;
  j["rays"] = rays_json(rep.cone);
  j["label"] = std::string(label_name(rep.label));
  j["notes"] = rep.notes;
  emit(a, dump(j), out);
  return rep.label == Label::Unresolved ? unresolved : ok;
}

std::string samples_csv(const ConeFit& fit) {
  std::string s = "ray,dir_x,dir_y,radius,re_upper,im_upper,re_lower,im_lower\n";
  for (std::size_t r = 0; r < fit.rays.size(); ++r) {
    const auto& ray = fit.rays[r];
    for (std::size_t i = 0; i < fit.radii.size(); ++i) {
      s += std::to_string(r + 1) + "," + format_double(ray.direction[0]) + "," +
           format_double(ray.direction[1]) + "," + format_double(fit.radii[i]) + "," +
           format_double(ray.upper[i].real()) + "," + format_double(ray.upper[i].imag()) + "," +
           format_double(ray.lower[i].real()) + "," + format_double(ray.lower[i].imag()) + "\n";
    }
  }
  return s;
}

// Intersections of the h3 bands with the planes w = 1 - s dtau +/- d, from the
// characteristic cubic solved for k^2.
std::string sections_csv(const Args& a) {
  std::string s = "plane,dtau,k,omega\n";
  const auto dtau = linspace(-0.04, 0.04, 401);
  for (int sign : {-1, 1}) {
    for (double dt : dtau) {
      const double w = 1.0 - a.tilt_s * dt + sign * a.offset_d;
      const double tau = 1.0 + dt;
      const double t2 = a.v0 * a.v0 * (1.0 - tau * tau) / 4.0;
      const double k2 = (w * w * w - 2.0 * w * w + (1.0 - 2.0 * t2) * w + 2.0 * t2) / (4.0 * w);
      if (!(k2 >= 0.0)) continue;
      const double k = std::sqrt(k2);
      for (double kk : {-k, k}) {
        s += std::to_string(sign) + "," + format_double(dt) + "," + format_double(kk) + "," +
             format_double(w) + "\n";
        if (k == 0.0) break;
      }
    }
  }
  return s;
}

int cmd_cone(const CLI::App* sub, const Args& a, std::ostream& out) {
  const auto family = make_family(a.model, family_options(a));
  check_axis_options(family, a);
  const ParamPoint point = resolve_point(family, a);
  const AnalysisConfig cfg = analysis_config(a);
  const auto rays = a.direction.empty() ? equally_spaced_rays(a.rays)
                                        : std::vector<std::array<double, 2>>{parse_pair(a.direction)};
  const ConeFit fit = fit_cone(family, point, cfg.bands, rays, log_radii(a.rmin, a.rmax, a.nradii));

  if (!a.samples.empty()) write_atomic(a.samples, samples_csv(fit));
  if (!a.sections.empty()) {
    if (family.id != "h3") throw InvalidArgument("--sections is only defined for model h3");
    write_atomic(a.sections, sections_csv(a));
  }
  if (format_of(a, "json") == "csv") {
    emit(a, samples_csv(fit), out);
    return ok;
  }
  json j;
  j["config"] = config_echo(sub);
  j["family"] = family.id;
  j["center"] = location_json(family, fit.center);
  j["omega0"] = cjson(fit.omega0);
  j["radii"] = fit.radii;
  j["rays"] = rays_json(fit);
  emit(a, dump(j), out);
  return ok;
}

int cmd_isospectral(const CLI::App* sub, const Args& a, std::ostream& out) {
  require_json(a, "isospectral");
  const FamilyOptions fo = family_options(a);
  const auto fa = make_family(a.family_a, fo);
  const auto fb = make_family(a.family_b, fo);
  if (fa.dimension != fb.dimension) {
    throw InvalidArgument("dimension mismatch: " + fa.id + " is " + std::to_string(fa.dimension) + ", " +
                          fb.id + " is " + std::to_string(fb.dimension));
  }
  if (fa.axes != fb.axes) throw InvalidArgument("families have different parameter axes");
  check_axis_options(fa, a);
  auto default_range = [](const std::string& name) -> std::optional<Range> {
    if (name == "tau") return Range{0.0, 2.0, 101};
    if (name == "k") return Range{-0.5, 0.5, 101};
    return std::nullopt;
  };
  const Axis first = resolve_axis(fa.axes[0], a, default_range(fa.axes[0]));
  const Axis second = resolve_axis(fa.axes[1], a, default_range(fa.axes[1]));

  IsospectralOptions io;
  io.compare_degeneracies = !a.no_degeneracies;
  io.find_tol = a.find_tol;
  io.analysis = analysis_config(a);
  const IsospectralReport rep = verify_isospectral(fa, fb, first, second, io);
  const bool pass = rep.max_deviation <= a.tol;

  json j;
  j["config"] = config_echo(sub);
  j["family_a"] = rep.family_a;
  j["family_b"] = rep.family_b;
  j["points"] = rep.points;
  j["max_deviation"] = rep.max_deviation;
  j["worst_point"] = location_json(fa, rep.worst_point);
  j["analytic_deviation"] = rep.analytic_deviation;
  j["tol"] = a.tol;
  j["pass"] = pass;
  json degs = json::array();
  for (const auto& d : rep.degeneracies) {
    degs.push_back(json{{"location", location_json(fa, d.location)},
                        {"omega0", cjson(d.omega0)},
                        {"label_a", std::string(label_name(d.label_a))},
                        {"label_b", std::string(label_name(d.label_b))},
                        {"geometric_a", d.geometric_a},
                        {"geometric_b", d.geometric_b},
                        {"note", d.note}});
  }
  j["degeneracies"] = std::move(degs);
  j["unmatched_candidates"] = rep.unmatched;
  emit(a, dump(j), out);
  return pass ? ok : check_failed;
}

int cmd_puiseux(const CLI::App* sub, const Args& a, std::ostream& out) {
  require_json(a, "puiseux");
  const auto family = make_family(a.model, family_options(a));
  check_axis_options(family, a);
  const ParamPoint point = resolve_point(family, a);
  if (a.direction.empty()) throw InvalidArgument("puiseux needs --direction a,b");
  PuiseuxOptions po;
  po.eps_min = a.eps_min;
  po.eps_max = a.eps_max;
  po.samples = a.neps;
  const auto res = puiseux_diagnostic(family, point, parse_pair(a.direction), analysis_config(a), po);

  json j;
  j["config"] = config_echo(sub);
  j["family"] = family.id;
  j["location"] = location_json(family, point);
  j["direction"] = dir_json(res.direction);
  j["omega0"] = cjson(res.omega0);
  j["model"] = std::string(puiseux_model_name(res.model));
  j["c_half"] = res.c_half;
  j["c_one"] = res.c_one;
  json sheets = json::array();
  for (const auto& s : res.sheets) {
    sheets.push_back(json{{"c_half", cjson(s.c_half)}, {"c_one", cjson(s.c_one)}, {"residual", s.residual}});
  }
  j["sheets"] = std::move(sheets);
  j["eps"] = res.eps;
  emit(a, dump(j), out);
  return ok;
}

// Config file tokens go right after the subcommand so later flags override.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.empty()) return args;
  std::vector<std::string> merged{args[0]};
  for (auto& t : config_file_tokens(path)) merged.push_back(std::move(t));
  merged.insert(merged.end(), args.begin() + 1, args.end());
  return merged;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Dirac exceptional points: band sweeps, classification and cone fits", "diracep"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();

  CLI::App* bands = app.add_subcommand("bands", "Band energies over a one- or two-axis grid");
  CLI::App* classify = app.add_subcommand("classify", "Classify the degeneracy at a point");
  CLI::App* cone = app.add_subcommand("cone", "Fit the dispersion cone around a degeneracy");
  CLI::App* iso = app.add_subcommand("isospectral", "Compare two families over a grid");
  CLI::App* puiseux = app.add_subcommand("puiseux", "Half-integer versus integer power fit");
  for (CLI::App* sub : {bands, classify, cone, iso, puiseux}) {
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();
    add_common(sub, a);
  }
  for (CLI::App* sub : {bands, classify, cone, puiseux}) {
    add_model(sub, a);
    add_axes(sub, a);
  }
  for (CLI::App* sub : {classify, cone, puiseux}) add_point(sub, a);
  for (CLI::App* sub : {classify, cone}) {
    sub->add_option("--rays", a.rays, "Number of equally spaced rays")->check(CLI::Range(1, 360));
    sub->add_option("--rmin", a.rmin, "Smallest probe radius")->check(CLI::PositiveNumber);
    sub->add_option("--rmax", a.rmax, "Largest probe radius")->check(CLI::PositiveNumber);
    sub->add_option("--nradii", a.nradii, "Number of log-spaced radii")->check(CLI::Range(4, 1000));
  }
  classify->add_option("--probe-radius", a.probe_radius, "Radius of the reality probe disk")
      ->check(CLI::PositiveNumber);
  cone->add_option("--direction", a.direction, "Single ray direction a,b in the parameter plane");
  cone->add_option("--samples", a.samples, "CSV of the sampled sheets along every ray");
  cone->add_option("--sections", a.sections, "h3 only: CSV of cuts by the planes w = 1 - s dtau +/- d");
  cone->add_option("--tilt-s", a.tilt_s, "Plane tilt s for --sections");
  cone->add_option("--offset-d", a.offset_d, "Plane offset d for --sections");

  iso->add_option("--family-a", a.family_a, "First family")->required()->check(CLI::IsMember(family_ids()));
  iso->add_option("--family-b", a.family_b, "Second family")->required()->check(CLI::IsMember(family_ids()));
  add_model_params(iso, a);
  add_axes(iso, a);
  iso->add_option("--tol", a.tol, "Maximum allowed spectral deviation")->check(CLI::PositiveNumber);
  iso->add_option("--find-tol", a.find_tol, "Gap threshold for degeneracy candidates")
      ->check(CLI::PositiveNumber);
  iso->add_flag("--no-degeneracies", a.no_degeneracies, "Skip the shared-degeneracy comparison");
  iso->add_option("--band-pair", a.band_pair, "Unused; accepted for config files shared with classify");

  puiseux->add_option("--direction", a.direction, "Direction a,b in the parameter plane");
  puiseux->add_option("--eps-min", a.eps_min, "Smallest step")->check(CLI::PositiveNumber);
  puiseux->add_option("--eps-max", a.eps_max, "Largest step")->check(CLI::PositiveNumber);
  puiseux->add_option("--neps", a.neps, "Number of log-spaced steps")->check(CLI::Range(5, 1000));

  try {
    std::vector<std::string> argv = merge_config(args);
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return ok;
    }
    err << "diracep: " << e.what() << "\n";
    return config_error;
  } catch (const Error& e) {
    err << "diracep: " << e.what() << "\n";
    return config_error;
  }

  try {
    if (bands->parsed()) return cmd_bands(bands, a, out);
    if (classify->parsed()) return cmd_classify(classify, a, out);
    if (cone->parsed()) return cmd_cone(cone, a, out);
    if (iso->parsed()) return cmd_isospectral(iso, a, out);
    return cmd_puiseux(puiseux, a, out);
  } catch (const InvalidArgument& e) {
    err << "diracep: " << e.what() << "\n";
    return config_error;
  } catch (const PreconditionViolation& e) {
    err << "diracep: " << e.what() << "\n";
    return precondition_violation;
  } catch (const NumericalFailure& e) {
    err << "diracep: numerical failure: " << e.what() << "\n";
    return numerical_failure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "diracep: " << e.what() << "\n";
    return config_error;
  }
}

}  // namespace diracep::cli

#include "neocalc/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "neocalc/errors.hpp"
#include "neocalc/fuzzy_derivatives.hpp"
#include "neocalc/gallery.hpp"
#include "neocalc/reference_oracles.hpp"
#include "neocalc/report.hpp"
#include "neocalc/sequence_limits.hpp"

namespace neocalc::cli {
namespace {

using report::Json;

constexpr std::size_t kDefaultBudget = 100000;

struct Options {
  std::string input;
  std::string builtin;
  std::string out_path;
  std::vector<double> r_values;
  std::vector<double> points;  // seq-member --a
  std::vector<double> z_values;
  double x = 0.0;
  double profile_r = 0.0;
  double tail_fraction = 0.25;
  double tolerance = 1e-9;
  std::string mode = "centered";
  std::string grid;
  std::string plot_data;
  std::optional<double> base_fraction;
  std::optional<double> floor_fraction;
  unsigned threads = 0;
  bool oracle = false;
};

std::size_t eval_budget() {
  const char* env = std::getenv("NEOCALC_EVAL_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultBudget;
  std::size_t v = 0;
  const std::string_view s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v == 0) {
    throw std::invalid_argument("NEOCALC_EVAL_BUDGET must be a positive integer, got '" + std::string(s) + "'");
  }
  return v;
}

void require_radii(const std::vector<double>& rs) {
  for (double r : rs) {
    if (!(r >= 0.0) || std::isinf(r)) throw std::invalid_argument("--r values must be finite and >= 0");
  }
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read input file '" + path + "'");
  return in;
}

SequenceWindow load_sequence(const std::string& path) {
  auto in = open_input(path);
  auto values = report::read_sequence_csv(in);
  if (values.empty()) throw std::invalid_argument("input file '" + path + "' holds no values");
  return SequenceWindow(std::move(values));
}

FunctionOracle load_function(const Options& o) {
  if (o.input.empty() == o.builtin.empty()) {
    throw std::invalid_argument("give exactly one of --in and --builtin");
  }
  FunctionOracle f;
  if (!o.builtin.empty()) {
    f = gallery::from_spec(o.builtin);
  } else {
    auto in = open_input(o.input);
    auto [xs, ys] = report::read_samples_csv(in);
    f = gallery::sampled(std::move(xs), std::move(ys));
  }
  f.eval_budget = eval_budget();
  return f;
}

ScaleLadder ladder_from(const Options& o) {
  ScaleLadder ladder;
  if (o.base_fraction) ladder.base_fraction = *o.base_fraction;
  if (o.floor_fraction) ladder.floor_fraction = *o.floor_fraction;
  ladder.validate();
  return ladder;
}

Json ladder_json(const ScaleLadder& l) {
  return {{"base_fraction", report::number(l.base_fraction)},
          {"floor_fraction", report::number(l.floor_fraction)},
          {"ratio", report::number(l.ratio)},
          {"count", l.count},
          {"band_size", l.band_size},
          {"bands_used", l.bands_used}};
}

ApproachMode mode_from(const std::string& text) {
  const auto m = parse_mode(text);
  if (!m) throw std::invalid_argument("unknown --mode '" + text + "'");
  return *m;
}

std::vector<double> parse_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
    throw ParseError("grid must look like start:end:count, got '" + text + "'");
  }
  auto num = [&](std::string_view part) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw ParseError("grid: bad number '" + std::string(part) + "'");
    }
    return v;
  };
  const std::string_view s(text);
  const double start = num(s.substr(0, first));
  const double end = num(s.substr(first + 1, second - first - 1));
  const std::string_view count_text = s.substr(second + 1);
  std::size_t count = 0;
  const auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
  if (count_text.empty() || ec != std::errc() || ptr != count_text.data() + count_text.size()) {
    throw ParseError("grid: bad count '" + std::string(count_text) + "'");
  }
  return make_grid(start, end, count);
}

Json optional_string(const std::string& s) { return s.empty() ? Json(nullptr) : Json(s); }

Json numbers(const std::vector<double>& v) {
  Json out = Json::array();
  for (double d : v) out.push_back(report::number(d));
  return out;
}

bool is_alternating_h(const SequenceWindow& seq) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const double expected = seq.index_at(i) % 2 == 0 ? 2.0 : 0.0;
    if (seq[i] != expected) return false;
  }
  return true;
}

Json document(const std::string& command, Json request, Json results, Json diagnostics,
              const std::vector<report::Warning>& warnings) {
  Json w = Json::array();
  for (const auto& warning : warnings) w.push_back(report::to_json(warning));
  request["command"] = command;
  return {{"schema_version", report::kSchemaVersion},
          {"command", command},
          {"request", std::move(request)},
          {"results", std::move(results)},
          {"diagnostics", std::move(diagnostics)},
          {"warnings", std::move(w)}};
}

Json seq_request(const Options& o) {
  return {{"input", optional_string(o.input)},
          {"r", numbers(o.r_values)},
          {"tail_fraction", report::number(o.tail_fraction)},
          {"tolerance", report::number(o.tolerance)},
          {"oracle", o.oracle}};
}

Json seq_diagnostics(const TailBounds& b) {
  return {{"window_size", b.window_size},
          {"source_length", b.source_length},
          {"stable", b.stable},
          {"bounded", b.bounded},
          {"extrapolated", b.extrapolated}};
}

Json seq_analyze(const Options& o) {
  require_radii(o.r_values);
  const SequenceWindow seq = load_sequence(o.input);
  TailOptions topt;
  topt.tail_fraction = o.tail_fraction;
  topt.tolerance = o.tolerance;
  const LimitReport lr = analyze_sequence(seq, o.r_values, topt);

  Json results = report::to_json(lr);
  Json fundamental = Json::array();
  for (double r : o.r_values) {
    fundamental.push_back({{"r", report::number(r)}, {"holds", is_r_fundamental(lr.bounds, r)}});
  }
  results["fundamental"] = fundamental;
  results["fuzzy_converges"] = fuzzy_converges(lr.bounds);
  if (o.oracle) {
    Json checks = Json::array();
    for (double r : o.r_values) {
      checks.push_back({{"r", report::number(r)},
                        {"fundamental_direct", report::to_json(oracle::is_r_fundamental_direct(seq, r))}});
    }
    results["oracle"] = checks;
  }
  return document("seq-analyze", seq_request(o), results, seq_diagnostics(lr.bounds), {});
}

Json seq_member(const Options& o) {
  require_radii(o.r_values);
  if (o.points.empty()) throw std::invalid_argument("seq-member needs at least one --a");
  for (double a : o.points) {
    if (!std::isfinite(a)) throw std::invalid_argument("--a values must be finite");
  }
  const SequenceWindow seq = load_sequence(o.input);
  TailOptions topt;
  topt.tail_fraction = o.tail_fraction;
  topt.tolerance = o.tolerance;
  const TailBounds bounds = tail_bounds(seq, topt);

  std::vector<report::Warning> warnings;
  Json points = Json::array();
  for (double a : o.points) {
    Json limits = Json::array();
    for (double r : o.r_values) {
      Json entry = {{"r", report::number(r)}, {"is_r_limit", is_r_limit(bounds, a, r)}};
      if (o.oracle) entry["direct"] = report::to_json(oracle::is_r_limit_direct(seq, a, r));
      limits.push_back(entry);
      if (is_alternating_h(seq) && ((a == 0.0 && r == 1.0) || (a == -1.0 && r == 2.0))) {
        const std::string what = a == 0.0 ? "0 as a 1-limit" : "-1 as a 2-limit";
        warnings.push_back({"h-limit-claim",
                            "A published example lists " + what +
                                " of h = {1+(-1)^i}; the r-limit definition gives defect " +
                                (a == 0.0 ? "2" : "3") + " there, so the claim is rejected."});
      }
    }
    points.push_back({{"a", report::number(a)},
                      {"defect", report::number(limit_defect(bounds, a))},
                      {"membership", report::number(membership_lim(bounds, a))},
                      {"r_limits", limits}});
  }
  Json results = {{"bounds", report::to_json(bounds)}, {"points", points}};
  Json request = seq_request(o);
  request["a"] = numbers(o.points);
  return document("seq-member", request, results, seq_diagnostics(bounds), warnings);
}

Json fn_request(const Options& o, const ScaleLadder& ladder) {
  return {{"input", optional_string(o.input)},
          {"builtin", optional_string(o.builtin)},
          {"ladder", ladder_json(ladder)}};
}

Json fn_analyze(const Options& o) {
  require_radii(o.r_values);
  const ApproachMode mode = mode_from(o.mode);
  const FunctionOracle f = load_function(o);
  const ScaleLadder ladder = ladder_from(o);
  if (!std::isfinite(o.x) || !f.domain.contains(o.x)) {
    throw std::invalid_argument("--x lies outside the function domain");
  }
  const DerivativeReport rep = classify(f, o.x, ladder, o.r_values);
  const QuotientBounds& qb = rep.bounds(mode);

  Json strong = Json::array();
  Json weak = Json::array();
  for (double r : o.r_values) {
    strong.push_back({{"r", report::number(r)}, {"set", report::to_json(rep.strong_sets.at({mode, r}))}});
    weak.push_back({{"r", report::number(r)}, {"sets", report::to_json(rep.weak_sets.at({mode, r}))}});
  }
  Json membership = Json::array();
  for (double z : o.z_values) {
    membership.push_back({{"z", report::number(z)}, {"mu", report::number(membership_mu(qb, z))}});
  }
  Json full = report::to_json(rep);
  Json results = {{"x", report::number(o.x)},
                  {"mode", std::string(to_string(mode))},
                  {"classification", std::string(to_string(rep.classification))},
                  {"defect", report::number(rep.defect)},
                  {"mode_defect", report::number(derivative_defect(qb))},
                  {"continuity_defect", report::number(rep.continuity_defect)},
                  {"strong_sets", strong},
                  {"weak_sets", weak},
                  {"membership", membership},
                  {"per_mode", full["per_mode"]}};

  bool exhausted = false;
  bool mesh = false;
  bool clipped = false;
  Json stable = Json::object();
  for (const auto& [m, b] : rep.per_mode) {
    exhausted = exhausted || b.budget_exhausted;
    mesh = mesh || b.mesh_limited;
    clipped = clipped || b.domain_clipped;
    stable[std::string(to_string(m))] = b.stable;
  }
  Json diagnostics = {{"eval_budget", f.eval_budget},
                      {"evaluations", rep.evaluations},
                      {"budget_exhausted", exhausted},
                      {"mesh_limited", mesh},
                      {"domain_clipped", clipped},
                      {"smallest_scale", report::number(qb.smallest_scale)},
                      {"stable", stable}};

  std::vector<report::Warning> warnings;
  const bool has_zero_r = std::find(o.r_values.begin(), o.r_values.end(), 0.0) != o.r_values.end();
  if (o.builtin == "abs" && o.x == 0.0 && mode == ApproachMode::Centered && has_zero_r) {
    warnings.push_back({"abs-centered-zero-set",
                        "A published example gives [-1, 1] as the strong centered 0-set of |x| at 0. "
                        "The strong centered definition makes that set empty; [-1, 1] is the weak "
                        "two-sided 0-set."});
  }
  if (o.builtin.rfind("vdw:", 0) == 0) {
    warnings.push_back({"vdw-bound-not-asserted",
                        "The published claim that 0 is a centered 5-derivative of this series is not "
                        "checked; only measured envelopes of the partial sum are reported."});
  }
  Json request = fn_request(o, ladder);
  request["x"] = report::number(o.x);
  request["mode"] = std::string(to_string(mode));
  request["r"] = numbers(o.r_values);
  request["z"] = numbers(o.z_values);
  return document("fn-analyze", request, results, diagnostics, warnings);
}

std::string tsv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

Json fn_profile(const Options& o) {
  require_radii({o.profile_r});
  const FunctionOracle f = load_function(o);
  const ScaleLadder ladder = ladder_from(o);
  const std::vector<double> grid = parse_grid(o.grid);
  for (double x : grid) {
    if (!f.domain.contains(x)) throw std::invalid_argument("grid point " + tsv_number(x) + " lies outside the domain");
  }
  const auto profile = global_profile(f, grid, o.profile_r, ladder, o.threads);

  Json rows = Json::array();
  std::size_t failed = 0;
  std::size_t empty = 0;
  for (const auto& p : profile) {
    rows.push_back(report::to_json(p));
    failed += p.error.empty() ? 0 : 1;
    empty += p.strong_set.is_empty() ? 1 : 0;
  }
  if (!o.plot_data.empty()) {
    std::ofstream plot(o.plot_data);
    if (!plot) throw std::invalid_argument("cannot write plot data to '" + o.plot_data + "'");
    plot << "x\tlo\thi\tdefect\n";
    for (const auto& p : profile) {
      const double nan = std::nan("");
      plot << tsv_number(p.x) << '\t' << tsv_number(p.strong_set.is_empty() ? nan : p.strong_set.lo()) << '\t'
           << tsv_number(p.strong_set.is_empty() ? nan : p.strong_set.hi()) << '\t' << tsv_number(p.defect)
           << '\n';
    }
  }
  Json results = {{"r", report::number(o.profile_r)}, {"rows", rows}};
  Json diagnostics = {{"eval_budget", f.eval_budget},
                      {"points", profile.size()},
                      {"failed_points", failed},
                      {"empty_sets", empty},
                      {"mesh_limited", f.mesh_spacing > 0.0}};
  Json request = fn_request(o, ladder);
  request["grid"] = o.grid;
  request["r"] = report::number(o.profile_r);
  request["plot_data"] = optional_string(o.plot_data);
  return document("fn-profile", request, results, diagnostics, {});
}

Json gallery_list() {
  Json functions = Json::array();
  for (const auto& spec : gallery::names()) {
    Interval domain = Interval::entire();
    if (spec.rfind("skew_tent", 0) == 0) domain = Interval(0.0, 1.0);
    functions.push_back({{"spec", spec}, {"domain", report::to_json(domain)}});
  }
  return document("gallery-list", Json::object(), {{"functions", functions}}, Json::object(), {});
}

void add_out(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out_path, "Write the JSON report to this file instead of stdout");
}

void add_function_source(CLI::App* cmd, Options& o) {
  auto* in = cmd->add_option("--in", o.input, "CSV of x,y samples sorted by x");
  auto* builtin = cmd->add_option("--builtin", o.builtin, "Gallery function spec, e.g. skew_tent:0.5,0");
  in->excludes(builtin);
  cmd->add_option("--base-fraction", o.base_fraction, "Coarsest ladder scale relative to max(1,|x|)");
  cmd->add_option("--floor-fraction", o.floor_fraction, "Finest ladder scale relative to max(1,|x|)");
}

void add_sequence_source(CLI::App* cmd, Options& o) {
  cmd->add_option("--in", o.input, "CSV with one value per line")->required();
  cmd->add_option("--r", o.r_values, "Radius; repeatable");
  cmd->add_option("--tail-fraction", o.tail_fraction, "Fraction of the prefix used as the tail window");
  cmd->add_option("--tolerance", o.tolerance, "Relative stability tolerance");
  cmd->add_flag("--oracle", o.oracle, "Also run the direct definition checkers")->group("");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuzzy limits of sequences and interval-valued derivatives of functions", "neocalc"};
  app.require_subcommand(1);
  Options o;

  auto* sa = app.add_subcommand("seq-analyze", "Tail envelope, r-limit sets and measure of convergence");
  add_sequence_source(sa, o);
  add_out(sa, o);

  auto* sm = app.add_subcommand("seq-member", "Defect, membership and r-limit tests for given points");
  add_sequence_source(sm, o);
  sm->add_option("--a", o.points, "Candidate limit point; repeatable")->required();
  add_out(sm, o);

  auto* fa = app.add_subcommand("fn-analyze", "Quotient envelopes and derivative sets at one point");
  add_function_source(fa, o);
  fa->add_option("--x", o.x, "Point of analysis")->required();
  fa->add_option("--mode", o.mode, "centered, left, right or two-sided");
  fa->add_option("--r", o.r_values, "Radius; repeatable");
  fa->add_option("--z", o.z_values, "Value for membership; repeatable");
  add_out(fa, o);

  auto* fp = app.add_subcommand("fn-profile", "Centered strong r-set and defect over a grid");
  add_function_source(fp, o);
  fp->add_option("--grid", o.grid, "start:end:count")->required();
  fp->add_option("--r", o.profile_r, "Radius");
  fp->add_option("--plot-data", o.plot_data, "Also write x, lo, hi, defect rows as TSV");
  fp->add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)");
  add_out(fp, o);

  auto* gl = app.add_subcommand("gallery-list", "List built-in function specs");
  add_out(gl, o);

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("neocalc");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    Json doc;
    if (sa->parsed()) {
      doc = seq_analyze(o);
    } else if (sm->parsed()) {
      doc = seq_member(o);
    } else if (fa->parsed()) {
      doc = fn_analyze(o);
    } else if (fp->parsed()) {
      doc = fn_profile(o);
    } else {
      doc = gallery_list();
    }
    const std::string text = doc.dump(2) + "\n";
    if (o.out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(o.out_path, std::ios::binary);
      if (!file) throw std::invalid_argument("cannot write report to '" + o.out_path + "'");
      file << text;
    }
    return kExitOk;
  } catch (const ParseError& e) {
    err << "neocalc: parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    err << "neocalc: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace neocalc::cli

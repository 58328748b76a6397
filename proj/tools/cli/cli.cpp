#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "CLI11.hpp"
#include "modlab/approx.hpp"
#include "modlab/errors.hpp"
#include "modlab/extremals.hpp"
#include "modlab/moduli.hpp"
#include "modlab/rates.hpp"
#include "modlab/verify.hpp"
#include "records.hpp"

namespace modlab::cli {

namespace {

/// Bad command-line input detected after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything any subcommand may read; each subcommand registers the subset
/// it accepts, so flags meant for another command are rejected by the parser.
struct Options {
  std::string fn;
  std::vector<std::string> params;
  int k = 1;
  std::string q = "1";
  std::string p = "inf";
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> deltas;
  std::vector<int> degrees;
  std::string suite = "all";
  std::string name;
  std::string input;
  std::string component = "modulus";
  std::string model = "auto";
  std::uint64_t seed = 42;
  std::string out;
  std::string format = "csv";
  bool plot_data = false;
};

NormOrder parse_order(const std::string& flag, const std::string& text) {
  try {
    return NormOrder::parse(text);
  } catch (const Error& e) {
    throw UsageError("--" + flag + ": " + e.what());
  }
}

double parse_number(const std::string& key, const std::string& text) {
  if (text == "inf") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw UsageError("parameter " + key + " expects a number, got '" + text + "'");
  }
  return v;
}

const CatalogInfo& catalog_info(const std::string& name) {
  static const std::vector<CatalogInfo> list = catalog_list();
  for (const CatalogInfo& info : list) {
    if (info.name == name) return info;
  }
  std::string known;
  for (const CatalogInfo& info : list) known += (known.empty() ? "" : ", ") + info.name;
  throw UsageError("unknown function '" + name + "' (catalog: " + known + ")");
}

/// key=value pairs checked against the entry's parameter names.
ParamMap parse_params(const std::string& fn, const std::vector<std::string>& items) {
  const CatalogInfo& info = catalog_info(fn);
  ParamMap out;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("--param expects key=value, got '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    if (!info.defaults.contains(key)) {
      std::string keys;
      for (const auto& [k, v] : info.defaults) keys += (keys.empty() ? "" : ", ") + k;
      throw UsageError("unknown parameter '" + key + "' for " + fn + " (accepted: " +
                       (keys.empty() ? "none" : keys) + ")");
    }
    out[key] = parse_number(key, text);
  }
  return out;
}

std::string join_reals(const std::vector<double>& xs) {
  std::string s;
  for (double x : xs) s += (s.empty() ? "" : ",") + format_real(x);
  return s;
}

std::string params_text(const ParamMap& params, bool display = false) {
  std::string s;
  for (const auto& [k, v] : params) {
    s += (s.empty() ? "" : ",") + k + "=" + (display ? short_real(v) : format_real(v));
  }
  return s;
}

struct Outcome {
  ResultRecord record;
  int exit_code = kExitOk;
};

// Subcommands. Each fills config.parameters with its effective settings
// before computing, then returns the record and prints a summary.

Outcome run_modulus(const Options& o, RunConfig& config, std::ostream& out) {
  const ParamMap params = parse_params(o.fn, o.params);
  const NormOrder q = parse_order("q", o.q);
  const std::vector<double> deltas = o.deltas.empty() ? std::vector<double>{0.1} : o.deltas;
  config.parameters = {{"fn", o.fn},
                       {"param", params_text(params)},
                       {"k", std::to_string(o.k)},
                       {"q", q.to_string()},
                       {"alpha", format_real(o.alpha)},
                       {"beta", format_real(o.beta)},
                       {"delta", join_reals(deltas)}};
  const CatalogEntry entry = catalog_get(o.fn, params);
  Outcome res;
  Table table({"delta", "main", "forward", "backward", "total"});
  nlohmann::json items = nlohmann::json::array();
  for (double delta : deltas) {
    ModulusRequest req;
    req.k = o.k;
    req.delta = delta;
    req.weight = {o.alpha, o.beta};
    req.q = q;
    const ModulusResult m = dt_modulus(entry.descriptor, req);
    res.record.rows.push_back({delta, m.main, "main"});
    res.record.rows.push_back({delta, m.forward, "forward"});
    res.record.rows.push_back({delta, m.backward, "backward"});
    res.record.rows.push_back({delta, m.total, "total"});
    table.add({short_real(delta), short_real(m.main), short_real(m.forward),
               short_real(m.backward), short_real(m.total)});
    items.push_back({{"delta", json_real(delta)},
                     {"main", json_real(m.main)},
                     {"forward", json_real(m.forward)},
                     {"backward", json_real(m.backward)},
                     {"total", json_real(m.total)},
                     {"argmax_main", json_real(m.argmax_main)},
                     {"argmax_forward", json_real(m.argmax_forward)},
                     {"argmax_backward", json_real(m.argmax_backward)}});
  }
  res.record.payload = {{"moduli", items}};
  out << "dt_modulus of " << o.fn << " (k=" << o.k << ", q=" << q.to_string()
      << ", w=(" << short_real(o.alpha) << "," << short_real(o.beta) << "))\n";
  table.print(out);
  return res;
}

Outcome run_approx(const Options& o, RunConfig& config, std::ostream& out) {
  const ParamMap params = parse_params(o.fn, o.params);
  const NormOrder q = parse_order("q", o.q);
  const std::vector<int> degrees = o.degrees.empty() ? std::vector<int>{8} : o.degrees;
  std::string ns;
  for (int n : degrees) ns += (ns.empty() ? "" : ",") + std::to_string(n);
  config.parameters = {{"fn", o.fn},
                       {"param", params_text(params)},
                       {"n", ns},
                       {"q", q.to_string()},
                       {"alpha", format_real(o.alpha)},
                       {"beta", format_real(o.beta)}};
  const CatalogEntry entry = catalog_get(o.fn, params);
  const JacobiWeight w{o.alpha, o.beta};
  Outcome res;
  Table table({"n", "E_n", "solver", "iterations", "alternations", "duality_gap"});
  nlohmann::json items = nlohmann::json::array();
  for (int n : degrees) {
    const ApproxResult a = best_approx(entry.descriptor, n, w, q);
    res.record.rows.push_back({double(n), a.error, "error"});
    table.add({std::to_string(n), short_real(a.error), to_string(a.solver),
               std::to_string(a.iterations),
               q.is_infinite() ? std::to_string(a.residual_stats.alternation_count) : "-",
               short_real(a.residual_stats.duality_gap)});
    nlohmann::json coeffs = nlohmann::json::array();
    for (double c : a.poly.coeffs) coeffs.push_back(json_real(c));
    items.push_back({{"n", n},
                     {"error", json_real(a.error)},
                     {"solver", to_string(a.solver)},
                     {"iterations", a.iterations},
                     {"grid_size", a.grid_size},
                     {"discrete_objective", json_real(a.residual_stats.discrete_objective)},
                     {"alternation_count", a.residual_stats.alternation_count},
                     {"duality_gap", json_real(a.residual_stats.duality_gap)},
                     {"levelled_error", json_real(a.residual_stats.levelled_error)},
                     {"chebyshev_coefficients", coeffs}});
  }
  res.record.payload = {{"approximations", items}};
  out << "best approximation of " << o.fn << " (q=" << q.to_string() << ", w=("
      << short_real(o.alpha) << "," << short_real(o.beta) << "))\n";
  table.print(out);
  return res;
}

UpsilonSpec upsilon_spec(const Options& o) {
  return {o.k, parse_order("q", o.q), parse_order("p", o.p), o.alpha, o.beta};
}

void put_rate_parameters(const Options& o, RunConfig& config) {
  const UpsilonSpec s = upsilon_spec(o);
  config.parameters["k"] = std::to_string(s.k);
  config.parameters["q"] = s.q.to_string();
  config.parameters["p"] = s.p.to_string();
  config.parameters["alpha"] = format_real(s.alpha);
  config.parameters["beta"] = format_real(s.beta);
}

Outcome run_upsilon(const Options& o, RunConfig& config, std::ostream& out) {
  const std::vector<double> deltas = o.deltas.empty() ? std::vector<double>{0.1} : o.deltas;
  put_rate_parameters(o, config);
  config.parameters["delta"] = join_reals(deltas);
  const UpsilonSpec spec = upsilon_spec(o);
  Outcome res;
  for (double delta : deltas) {
    const double v = upsilon(spec, delta);
    res.record.rows.push_back({delta, v, "upsilon"});
    out << short_real(v) << '\n';
  }
  const RateExponents e = upsilon_exponents(spec);
  res.record.payload = {{"exponent", json_real(e.exponent)}, {"log_power", json_real(e.log_power)}};
  return res;
}

nlohmann::json fit_json(const RateFit& f) {
  return {{"exponent", json_real(f.exponent)},
          {"log_power", json_real(f.log_power)},
          {"constant", json_real(f.constant)},
          {"r_squared", json_real(f.r_squared)},
          {"residual_max", json_real(f.residual_max)},
          {"model", to_string(f.model)}};
}

void print_fit(std::ostream& out, const RateFit& f) {
  Table t({"model", "exponent", "log_power", "constant", "r_squared", "residual_max"});
  t.add({to_string(f.model), short_real(f.exponent), short_real(f.log_power),
         short_real(f.constant), short_real(f.r_squared), short_real(f.residual_max)});
  t.print(out);
}

Outcome run_sweep(const Options& o, RunConfig& config, std::ostream& out) {
  const ParamMap params = parse_params(o.fn, o.params);
  const std::vector<double> deltas = o.deltas.empty() ? dyadic_deltas() : o.deltas;
  put_rate_parameters(o, config);
  config.parameters["fn"] = o.fn;
  config.parameters["param"] = params_text(params);
  config.parameters["delta"] = join_reals(deltas);
  const UpsilonSpec us = upsilon_spec(o);
  const FamilySpec spec{us.k, {us.alpha, us.beta}, us.q, us.p};
  // Entries with a delta parameter follow the sweep unless it is pinned.
  const bool follows = catalog_info(o.fn).defaults.contains("delta") && !params.contains("delta");
  const std::string fn = o.fn;
  const Family family = [fn, params, follows](double delta) {
    ParamMap p = params;
    if (follows) p["delta"] = delta;
    return catalog_get(fn, p);
  };
  const SweepResult sweep = family_sup_sweep(family, spec, deltas);
  Outcome res;
  const bool has_rate = us.q.value() < us.p.value();
  Table table({"delta", "modulus/norm", has_rate ? "upsilon" : ""});
  for (std::size_t i = 0; i < sweep.abscissae.size(); ++i) {
    const double d = sweep.abscissae[i];
    res.record.rows.push_back({d, sweep.values[i], "modulus"});
    std::string u;
    if (has_rate) {
      const double v = upsilon(us, d);
      res.record.rows.push_back({d, v, "upsilon"});
      u = short_real(v);
    }
    table.add({short_real(d), short_real(sweep.values[i]), u});
  }
  out << "normalized dt_modulus sweep of " << o.fn << " (k=" << us.k << ", q="
      << us.q.to_string() << ", p=" << us.p.to_string() << ")\n";
  table.print(out);
  res.record.payload = {{"follows_delta", follows}};
  if (sweep.abscissae.size() >= 5) {
    try {
      const RateFit fit = fit_rate_auto(sweep);
      res.record.payload["fit"] = fit_json(fit);
      out << '\n';
      print_fit(out, fit);
    } catch (const DegenerateFitError& e) {
      res.record.payload["fit"] = e.what();
      out << "\nno fit: " << e.what() << '\n';
    }
  }
  if (has_rate) {
    const RateExponents e = upsilon_exponents(us);
    res.record.payload["upsilon_exponent"] = json_real(e.exponent);
    res.record.payload["upsilon_log_power"] = json_real(e.log_power);
  }
  return res;
}

Outcome run_fit(const Options& o, RunConfig& config, std::ostream& out) {
  if (o.input.empty()) throw UsageError("rates fit needs --in <csv>");
  config.parameters = {{"in", o.input}, {"component", o.component}, {"model", o.model}};
  const std::vector<Row> rows = read_csv_rows(o.input);
  SweepResult sweep;
  sweep.module = "cli";
  sweep.op = "fit";
  for (const Row& r : rows) {
    if (r.component != o.component) continue;
    sweep.abscissae.push_back(r.abscissa);
    sweep.values.push_back(r.value);
  }
  if (sweep.abscissae.empty()) {
    throw UsageError("no rows with component '" + o.component + "' in " + o.input);
  }
  RateFit fit;
  if (o.model == "auto") {
    fit = fit_rate_auto(sweep);
  } else {
    fit = fit_rate(sweep, o.model == "pure_power" ? RateModel::pure_power : RateModel::power_log);
  }
  Outcome res;
  for (std::size_t i = 0; i < sweep.abscissae.size(); ++i) {
    const double x = sweep.abscissae[i];
    res.record.rows.push_back({x, sweep.values[i], "data"});
    const double model = fit.constant * std::pow(x, fit.exponent) *
                         std::pow(std::abs(std::log(x)), fit.log_power);
    res.record.rows.push_back({x, model, "fit"});
  }
  res.record.payload = fit_json(fit);
  out << "fit of " << sweep.abscissae.size() << " points from " << o.input << "\n";
  print_fit(out, fit);
  return res;
}

Outcome run_verify(const Options& o, RunConfig& config, std::ostream& out, std::ostream& err) {
  config.parameters = {{"suite", o.suite}};
  const std::vector<std::string> names = suite_names();
  if (o.suite != "all" && std::find(names.begin(), names.end(), o.suite) == names.end()) {
    throw UsageError("unknown suite '" + o.suite + "'");
  }
  const std::vector<CheckOutcome> outcomes = run_suite(o.suite, config.seed);
  Outcome res;
  Table table({"check", "verdict", "detail"});
  nlohmann::json items = nlohmann::json::array();
  int failures = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const CheckOutcome& c = outcomes[i];
    const std::string id = c.suite + "/" + c.name;
    res.record.rows.push_back({double(i), c.passed ? 1.0 : 0.0, id});
    table.add({id, c.passed ? "PASS" : "FAIL", c.detail});
    items.push_back({{"suite", c.suite},
                     {"name", c.name},
                     {"invariant", c.invariant},
                     {"citation", c.citation},
                     {"passed", c.passed},
                     {"detail", c.detail}});
    if (!c.passed) {
      ++failures;
      err << "FAIL " << id << ": " << c.invariant << " [" << c.citation << "] " << c.detail
          << '\n';
    }
  }
  res.record.payload = {{"verdicts", items}, {"failures", failures}};
  table.print(out);
  out << outcomes.size() - failures << "/" << outcomes.size() << " checks passed\n";
  if (failures > 0) res.exit_code = kExitVerifyFail;
  return res;
}

Outcome run_catalog(const Options& o, RunConfig& config, std::ostream& out) {
  Outcome res;
  if (o.name.empty()) {
    if (!o.params.empty()) throw UsageError("--param needs --name");
    config.parameters = {};
    Table table({"name", "parameters", "rate"});
    nlohmann::json items = nlohmann::json::array();
    for (const CatalogInfo& info : catalog_list()) {
      table.add({info.name, params_text(info.defaults, true), info.rate_formula});
      items.push_back({{"name", info.name},
                       {"defaults", info.defaults},
                       {"rate", info.rate_formula},
                       {"defining_result", info.defining_result}});
    }
    table.print(out);
    res.record.payload = {{"entries", items}};
    return res;
  }
  const ParamMap params = parse_params(o.name, o.params);
  config.parameters = {{"name", o.name}, {"param", params_text(params)}};
  const CatalogEntry e = catalog_get(o.name, params);
  out << e.name << "\n"
      << "  parameters: " << params_text(e.params, true) << "\n"
      << "  k-monotone order: " << e.order << "\n"
      << "  normalized in: ||w_{" << short_real(e.norm_weight.alpha) << ","
      << short_real(e.norm_weight.beta) << "} f||_" << e.norm_p.to_string() << " ~ "
      << short_real(e.norm_scale) << "\n"
      << "  rate: " << e.claimed_rate.formula << "\n"
      << "  " << e.defining_result << "\n";
  constexpr int kSamples = 400;
  for (int j = 0; j <= kSamples; ++j) {
    const double x = -1.0 + 2.0 * j / kSamples;
    const double v = e.descriptor(std::clamp(x, -1.0 + 1e-12, 1.0 - 1e-12));
    res.record.rows.push_back({x, v, e.name});
  }
  res.record.payload = {{"name", e.name},
                        {"params", e.params},
                        {"order", e.order},
                        {"norm_scale", json_real(e.norm_scale)},
                        {"rate", e.claimed_rate.formula},
                        {"defining_result", e.defining_result}};
  return res;
}

void add_output_flags(CLI::App* app, Options& o) {
  app->add_option("--seed", o.seed, "Seed for randomized checks")->capture_default_str();
  app->add_option("--out", o.out, "Directory for the result record and plot data");
  app->add_option("--format", o.format, "Record format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app->add_flag("--plot-data", o.plot_data,
                "Also write one two-column .dat file per curve (needs --out)");
}

void add_function_flags(CLI::App* app, Options& o) {
  app->add_option("--fn", o.fn, "Catalog entry (see `catalog`)")->required();
  app->add_option("--param", o.params, "Catalog parameter key=value (repeatable)");
}

void add_weight_flags(CLI::App* app, Options& o) {
  app->add_option("--alpha", o.alpha, "Weight exponent at -1")->capture_default_str();
  app->add_option("--beta", o.beta, "Weight exponent at +1")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted Ditzian-Totik moduli, best approximation and rate experiments",
               "modlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(MODLAB_VERSION));
  Options o;

  CLI::App* modulus = app.add_subcommand("modulus", "Weighted DT modulus of a catalog entry");
  add_function_flags(modulus, o);
  modulus->add_option("--k", o.k, "Order of the difference")->capture_default_str();
  modulus->add_option("--q", o.q, "Norm order (number or inf)")->capture_default_str();
  add_weight_flags(modulus, o);
  modulus->add_option("--delta", o.deltas, "Step bound(s), comma separated")->delimiter(',');
  add_output_flags(modulus, o);

  CLI::App* approx = app.add_subcommand("approx", "Best weighted polynomial approximation");
  add_function_flags(approx, o);
  approx->add_option("--n", o.degrees, "Degree(s), comma separated")->delimiter(',');
  approx->add_option("--q", o.q, "Norm order (number or inf)")->capture_default_str();
  add_weight_flags(approx, o);
  add_output_flags(approx, o);

  CLI::App* rates = app.add_subcommand("rates", "Sharp rates, sweeps and rate fits");
  rates->require_subcommand(1);
  CLI::App* ups = rates->add_subcommand("upsilon", "Evaluate the sharp rate upsilon");
  CLI::App* sweep = rates->add_subcommand("sweep", "Normalized modulus sweep over delta");
  CLI::App* fit = rates->add_subcommand("fit", "Fit C delta^a |ln delta|^b to a CSV sweep");
  for (CLI::App* a : {ups, sweep}) {
    a->add_option("--k", o.k, "Order")->capture_default_str();
    a->add_option("--q", o.q, "Norm order of the modulus")->capture_default_str();
    a->add_option("--p", o.p, "Norm order of the unit sphere")->capture_default_str();
    add_weight_flags(a, o);
    a->add_option("--delta", o.deltas, "Delta value(s), comma separated")->delimiter(',');
  }
  add_function_flags(sweep, o);
  fit->add_option("--in", o.input, "CSV written by `rates sweep`")->required();
  fit->add_option("--component", o.component, "Rows to fit")->capture_default_str();
  fit->add_option("--model", o.model, "Rate model")
      ->check(CLI::IsMember({"auto", "pure_power", "power_log"}))
      ->capture_default_str();
  for (CLI::App* a : {ups, sweep, fit}) add_output_flags(a, o);

  CLI::App* verify = app.add_subcommand("verify", "Run the invariant suites");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify->add_option("--suite", o.suite, "Suite name")
      ->check(CLI::IsMember(suites))
      ->capture_default_str();
  add_output_flags(verify, o);

  CLI::App* catalog = app.add_subcommand("catalog", "List catalog entries or describe one");
  catalog->add_option("--name", o.name, "Entry to describe");
  catalog->add_option("--param", o.params, "Entry parameter key=value (repeatable)");
  add_output_flags(catalog, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  RunConfig config;
  config.seed = o.seed;
  config.format = o.format == "json" ? OutputFormat::json : OutputFormat::csv;
  config.output_dir = o.out;
  std::string stem;
  try {
    if (o.plot_data && o.out.empty()) throw UsageError("--plot-data needs --out");
    Outcome res;
    if (modulus->parsed()) {
      config.command = stem = "modulus";
      res = run_modulus(o, config, out);
    } else if (approx->parsed()) {
      config.command = stem = "approx";
      res = run_approx(o, config, out);
    } else if (ups->parsed()) {
      config.command = "rates upsilon";
      stem = "rates_upsilon";
      res = run_upsilon(o, config, out);
    } else if (sweep->parsed()) {
      config.command = "rates sweep";
      stem = "rates_sweep";
      res = run_sweep(o, config, out);
    } else if (fit->parsed()) {
      config.command = "rates fit";
      stem = "rates_fit";
      res = run_fit(o, config, out);
    } else if (verify->parsed()) {
      config.command = stem = "verify";
      res = run_verify(o, config, out, err);
    } else {
      config.command = stem = "catalog";
      res = run_catalog(o, config, out);
    }
    res.record.config_hash = config.hash();
    res.record.timestamp = utc_timestamp();
    res.record.version = MODLAB_VERSION;
    if (!o.out.empty()) {
      out << "wrote " << save_record(config, res.record, stem).string() << '\n';
      if (o.plot_data) {
        for (const auto& path : save_plot_data(config, res.record, stem)) {
          out << "wrote " << path.string() << '\n';
        }
      }
    }
    return res.exit_code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace modlab::cli

#include "olx/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "olx/errors.hpp"
#include "olx/evaluate.hpp"
#include "olx/lfamily.hpp"
#include "olx/mertens.hpp"
#include "olx/moments.hpp"
#include "olx/parallel.hpp"
#include "olx/resonator.hpp"
#include "olx/scan.hpp"

#ifndef OLX_VERSION
#define OLX_VERSION "0.0.0"
#endif

namespace olx::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kRefineTol = 1e-8;

// ---- flag values -----------------------------------------------------------

struct Flags {
  std::string model = "zeta";
  std::map<std::string, std::string> raw;  // flag name -> text as given
  std::string format = "json";
  std::string out = "-";

  bool has(const std::string& name) const { return raw.count(name) != 0; }
};

double parse_real(const std::string& name, const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw UsageError("--" + name + " expects a finite number, got '" + text + "'");
  }
  return value;
}

std::uint64_t parse_count(const std::string& name, const std::string& text) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc() && ptr == text.data() + text.size()) return value;
  const double real = parse_real(name, text);
  if (real < 0.0 || real != std::floor(real) || real > 9007199254740992.0) {
    throw UsageError("--" + name + " expects a non-negative integer, got '" + text + "'");
  }
  return static_cast<std::uint64_t>(real);
}

double real_or(const Flags& f, const std::string& name, double fallback) {
  return f.has(name) ? parse_real(name, f.raw.at(name)) : fallback;
}

std::uint64_t count_or(const Flags& f, const std::string& name, std::uint64_t fallback) {
  return f.has(name) ? parse_count(name, f.raw.at(name)) : fallback;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real("x-grid", item));
  if (out.empty()) throw UsageError("--x-grid expects a comma-separated list");
  return out;
}

// ---- output ----------------------------------------------------------------

using Cell = std::variant<std::monostate, double, std::int64_t, std::uint64_t, bool, std::string>;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return csv_escape(v); }
  };
  return std::visit(Visitor{}, cell);
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Output {
  Json report;
  Table table;
};

std::string render(const Json& header, const Output& output, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    Json doc;
    doc["header"] = header;
    doc["report"] = output.report;
    os << doc.dump() << '\n';
    return os.str();
  }
  os << "# olx " << OLX_VERSION << " " << header.dump() << "\r\n";
  for (std::size_t i = 0; i < output.table.columns.size(); ++i) {
    os << (i ? "," : "") << csv_escape(output.table.columns[i]);
  }
  os << "\r\n";
  for (const auto& row : output.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
    os << "\r\n";
  }
  return os.str();
}

Json record_json(const ScanRecord& r) {
  return Json{{"t", r.t}, {"magnitude", r.magnitude}, {"phase", r.phase}, {"Y", r.Y}, {"refined", r.refined}};
}

// ---- subcommands -----------------------------------------------------------

Output cmd_mertens(const LFunctionModel& model, const Flags& f, Json& config) {
  std::vector<double> grid = f.has("x-grid") ? parse_grid(f.raw.at("x-grid")) : std::vector<double>{real_or(f, "x", 1e6)};
  if (f.has("x-grid") && f.has("x")) throw UsageError("--x and --x-grid are mutually exclusive");
  config["x_grid"] = grid;
  const MertensReport report = mertens_report(model, grid);
  Output out;
  out.report = {{"label", report.label},
                {"x", report.grid},
                {"product", report.product},
                {"prediction", report.prediction},
                {"ratio", report.ratio}};
  out.table.columns = {"x", "product", "prediction", "ratio"};
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    out.table.rows.push_back({report.grid[i], report.product[i], report.prediction[i], report.ratio[i]});
  }
  return out;
}

Output cmd_residue(const LFunctionModel& model, const Flags&, Json&) {
  std::string quantity = "residue";
  double tail = 0.0;
  switch (model.kind()) {
    case ModelKind::ZetaPower:
      break;
    case ModelKind::DedekindQuadratic:
      quantity = "L(1,chi_d)";
      break;
    case ModelKind::RankinSelbergDelta: {
      quantity = "L(1,sym2 Delta)";
      tail = sym2_residue(static_cast<std::uint32_t>(model.coeff_cutoff())).tail_estimate;
      break;
    }
  }
  Output out;
  out.report = {{"label", model.label()}, {"quantity", quantity}, {"value", model.residue()}, {"tail_estimate", tail}};
  out.table.columns = {"label", "quantity", "value", "tail_estimate"};
  out.table.rows.push_back({model.label(), quantity, model.residue(), tail});
  return out;
}

Output cmd_resonance(const LFunctionModel& model, const Flags& f, Json& config) {
  if (f.has("X") && f.has("T")) throw UsageError("--T and --X are mutually exclusive");
  ResonatorConfig rc;
  double T = 0.0;
  if (f.has("X")) {
    rc = resonator_config_for_cutoff(parse_real("X", f.raw.at("X")));
    config["X"] = rc.X;
    T = rc.T();
  } else {
    T = real_or(f, "T", 1e6);
    config["T"] = T;
    rc = resonator_config(T);
  }
  const ResonanceReport r = resonance_product(model, rc);
  Output out;
  out.report = {{"label", r.label},         {"log_T", r.log_T},
                {"T", T},              {"X", r.X},
                {"eps", rc.eps},            {"resonance_product", r.resonance_product},
                {"mertens_factor", r.mertens_factor}, {"defect", r.defect},
                {"asymptotic_bound", r.asymptotic_bound}};
  out.table.columns = {"label", "log_T", "T", "X", "eps", "resonance_product", "mertens_factor", "defect",
                       "asymptotic_bound"};
  out.table.rows.push_back({r.label, r.log_T, T, r.X, rc.eps, r.resonance_product, r.mertens_factor, r.defect,
                            r.asymptotic_bound});
  return out;
}

Output cmd_moments(const LFunctionModel& model, const Flags& f, Json& config) {
  const double X = real_or(f, "X", 20.0);
  const double T = real_or(f, "T", 5000.0);
  const double n_cutoff = real_or(f, "n-cutoff", kDefaultMomentCutoff);
  const double step = real_or(f, "step", 0.05);
  config["X"] = X;
  config["T"] = T;
  config["n_cutoff"] = n_cutoff;
  config["step"] = step;

  const MomentSeries series = moment_series(model, X, T, n_cutoff);
  const MomentQuadrature quad = moment_quadrature(model, X, T, step);
  ResonatorConfig rc{std::log(T), X, std::log(T) / T};
  const ResonanceReport res = resonance_product(model, rc);
  const double ratio = quad.I1 / quad.I2;
  const double allowance = (quad.I1_error + std::abs(ratio) * quad.I2_error) / quad.I2;
  const double i2_rel = std::abs(quad.I2 - series.I2) / quad.I2;

  Output out;
  out.report = {{"label", model.label()},
                {"X", X},
                {"T", T},
                {"series_I1", series.I1},
                {"series_I2", series.I2},
                {"series_I1_truncation", series.I1_truncation},
                {"series_I2_truncation", series.I2_truncation},
                {"series_terms", series.terms},
                {"quadrature_I1", quad.I1},
                {"quadrature_I2", quad.I2},
                {"quadrature_I1_error", quad.I1_error},
                {"quadrature_I2_error", quad.I2_error},
                {"quadrature_I1_imag", quad.I1_imag},
                {"quadrature_step", quad.finest_step},
                {"quadrature_nodes", quad.nodes},
                {"ratio", ratio},
                {"ratio_allowance", allowance},
                {"resonance_product", res.resonance_product},
                {"ratio_minus_product", ratio - res.resonance_product},
                {"I2_relative_difference", i2_rel}};
  for (const auto& [key, value] : out.report.items()) {
    out.table.columns.push_back(key);
    if (value.is_string()) {
      out.table.rows.resize(1);
      out.table.rows[0].push_back(value.get<std::string>());
    } else if (value.is_number_unsigned()) {
      out.table.rows.resize(1);
      out.table.rows[0].push_back(value.get<std::uint64_t>());
    } else {
      out.table.rows.resize(1);
      out.table.rows[0].push_back(value.get<double>());
    }
  }
  return out;
}

Output cmd_evaluate(const LFunctionModel& model, const Flags& f, Json& config) {
  const double t = real_or(f, "t", 1.0);
  const double Y = real_or(f, "Y", 1e6);
  config["t"] = t;
  config["Y"] = Y;
  const std::complex<double> value = euler_product_on_line(model, t, Y);

  Output out;
  out.report = {{"label", model.label()}, {"t", t},   {"Y", Y},
                {"re", value.real()},     {"im", value.imag()}, {"abs", std::abs(value)},
                {"arg", std::arg(value)}};
  out.table.columns = {"label", "t", "Y", "re", "im", "abs", "arg", "direct_re", "direct_im", "eta_re", "eta_im",
                       "deviation"};
  std::vector<Cell> row{model.label(), t, Y, value.real(), value.imag(), std::abs(value), std::arg(value)};
  if (model.has_direct_oracle() && t != 0.0) {
    const std::complex<double> direct = direct_value(model, t);
    const double deviation = std::abs(value / direct - 1.0);
    out.report["direct_re"] = direct.real();
    out.report["direct_im"] = direct.imag();
    row.insert(row.end(), {direct.real(), direct.imag()});
    if (model.kind() == ModelKind::ZetaPower) {
      const std::complex<double> eta = std::pow(zeta_eta({1.0, t}), model.degree());
      out.report["eta_re"] = eta.real();
      out.report["eta_im"] = eta.imag();
      row.insert(row.end(), {eta.real(), eta.imag()});
    } else {
      row.insert(row.end(), {std::monostate{}, std::monostate{}});
    }
    out.report["deviation"] = deviation;
    row.push_back(deviation);
  } else {
    row.insert(row.end(), 5, std::monostate{});
  }
  out.table.rows.push_back(std::move(row));
  return out;
}

Output cmd_calibrate(const LFunctionModel& model, const Flags& f, Json& config) {
  const double t_min = real_or(f, "t-min", 100.0);
  const double t_max = real_or(f, "t-max", 1000.0);
  const double Y = real_or(f, "Y", 1e6);
  const std::uint64_t samples = count_or(f, "samples", 100);
  const std::uint64_t seed = count_or(f, "seed", 0);
  config["t_min"] = t_min;
  config["t_max"] = t_max;
  config["Y"] = Y;
  config["samples"] = samples;
  config["seed"] = seed;
  const CalibrationStats s = calibrate_truncation(model, t_min, t_max, Y, samples, seed);

  Output out;
  out.report = {{"label", s.label},   {"study", "empirical truncation deviation"},
                {"t_min", s.t_min},   {"t_max", s.t_max},
                {"Y", s.Y},           {"sample_count", s.sample_count},
                {"seed", s.seed},     {"t", s.t},
                {"deviation", s.deviation}, {"median", s.median},
                {"mean", s.mean},     {"max", s.max}};
  out.table.columns = {"row", "t", "deviation"};
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    out.table.rows.push_back({static_cast<std::uint64_t>(i), s.t[i], s.deviation[i]});
  }
  out.table.rows.push_back({std::string("median"), std::monostate{}, s.median});
  out.table.rows.push_back({std::string("mean"), std::monostate{}, s.mean});
  out.table.rows.push_back({std::string("max"), std::monostate{}, s.max});
  return out;
}

Output cmd_scan(const LFunctionModel& model, const Flags& f, Json& config) {
  const double T = real_or(f, "T", 1e6);
  if (!(T > 1.0)) throw DomainError("scan requires T > 1");
  const double t_min = real_or(f, "t-min", std::sqrt(T));
  const double t_max = real_or(f, "t-max", T);
  const double step = real_or(f, "step", 0.01);
  const double Y = real_or(f, "Y", 1e5);
  const std::uint64_t top_k = count_or(f, "top-k", 10);
  config["T"] = T;
  config["t_min"] = t_min;
  config["t_max"] = t_max;
  config["step"] = step;
  config["Y"] = Y;
  config["top_k"] = top_k;
  config["refine_tol"] = kRefineTol;

  const auto grid = grid_scan(model, t_min, t_max, step, Y, top_k);
  auto refined = ordered_map<ScanRecord>(grid.size(), [&](std::size_t i) {
    return refine_peak(model, grid[i].t, Y, kRefineTol, step, t_min, t_max);
  });
  const BoundReport b = bound_report(refined, model, T);

  Output out;
  Json grid_json = Json::array();
  Json refined_json = Json::array();
  for (const auto& r : grid) grid_json.push_back(record_json(r));
  for (const auto& r : refined) refined_json.push_back(record_json(r));
  Json bound = {{"T", b.T},
                {"max_t", b.max_t},
                {"max_magnitude", b.max_magnitude},
                {"bound", b.bound},
                {"difference", b.difference},
                {"ratio", b.ratio}};
  if (b.has_conjecture) {
    bound["conjecture_base"] = b.conjecture_base;
    bound["conjecture_form"] = "e^{gamma_F}(ln2 T + ln3 T + C1)";
  }
  out.report = {{"label", model.label()}, {"grid", grid_json}, {"refined", refined_json}, {"bound_report", bound}};

  out.table.columns = {"kind", "rank", "t", "magnitude", "phase", "Y", "refined", "bound", "ratio"};
  auto add_rows = [&](const std::vector<ScanRecord>& records, const std::string& kind) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& r = records[i];
      out.table.rows.push_back(
          {kind, static_cast<std::uint64_t>(i), r.t, r.magnitude, r.phase, r.Y, r.refined, b.bound, r.magnitude / b.bound});
    }
  };
  add_rows(grid, "grid");
  add_rows(refined, "refined");
  return out;
}

// ---- dispatch --------------------------------------------------------------

struct Command {
  const char* name;
  const char* help;
  std::vector<std::string> flags;
  Output (*fn)(const LFunctionModel&, const Flags&, Json&);
};

const std::vector<Command>& commands() {
  static const std::vector<Command> table = {
      {"mertens", "Truncated Euler product at s = 1 against the Mertens prediction", {"x", "x-grid"}, cmd_mertens},
      {"residue", "Residue c_{-m} of the model at s = 1", {}, cmd_residue},
      {"resonance", "Resonance product, its factorization and the asymptotic bound", {"T", "X"}, cmd_resonance},
      {"moments", "Moment integrals by lattice series and by quadrature", {"X", "T", "n-cutoff", "step"}, cmd_moments},
      {"evaluate", "F(1+it; Y) and direct oracle values at one point", {"t", "Y"}, cmd_evaluate},
      {"calibrate", "Deviation of the truncated product from direct values at seeded t",
       {"t-min", "t-max", "Y", "samples", "seed"}, cmd_calibrate},
      {"scan", "Grid scan of |F(1+it; Y)| with peak refinement and bound report",
       {"T", "t-min", "t-max", "step", "Y", "top-k"}, cmd_scan},
  };
  return table;
}

std::string error_kind(int code) {
  switch (code) {
    case kUsage: return "usage";
    case kNumeric: return "numeric";
    case kResource: return "resource";
    default: return "error";
  }
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Large values of L-functions on the 1-line: products, moments and scans", "olx"};
  app.set_version_flag("--version", std::string("olx ") + OLX_VERSION);
  app.require_subcommand(1);

  Flags flags;
  for (const auto& cmd : commands()) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("--model", flags.model, "zeta, zeta^m, dedekind:d or rs-delta:N")->capture_default_str();
    for (const auto& name : cmd.flags) {
      sub->add_option_function<std::string>(
          "--" + name, [&flags, name](const std::string& v) { flags.raw[name] = v; }, "numeric value");
    }
    sub->add_option("--format", flags.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--out", flags.out, "output path, - for standard output")->capture_default_str();
  }

  std::string command;
  int code = kOk;
  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help();
      return kOk;
    } catch (const CLI::CallForVersion&) {
      out << "olx " << OLX_VERSION << '\n';
      return kOk;
    } catch (const CLI::ParseError& e) {
      throw UsageError(e.what());
    }

    validate_euler_gamma();
    const Command* selected = nullptr;
    for (const auto& cmd : commands()) {
      if (app.got_subcommand(cmd.name)) selected = &cmd;
    }
    command = selected->name;
    // Fail on a malformed worker count before any work starts.
    worker_count();

    const LFunctionModel model = parse_model(flags.model);
    Json config;
    config["command"] = command;
    config["model"] = flags.model;
    Output output = selected->fn(model, flags, config);
    config["format"] = flags.format;
    config["out"] = flags.out;
    Json header = {{"artifact", "olx"}, {"version", OLX_VERSION}, {"config", config}};
    const std::string text = render(header, output, flags.format);

    if (flags.out == "-") {
      out << text;
      out.flush();
    } else {
      std::ofstream file(flags.out, std::ios::binary);
      if (!file) throw UsageError("cannot open --out path '" + flags.out + "'");
      file << text;
      if (!file) throw ResourceError("failed writing '" + flags.out + "'");
    }
    return kOk;
  } catch (const UsageError& e) {
    code = kUsage;
    err << "olx: error kind=" << error_kind(code) << " command=" << (command.empty() ? "-" : command)
        << " reason=" << one_line(e.what()) << '\n';
  } catch (const DomainError& e) {
    code = kUsage;
    err << "olx: error kind=domain command=" << command << " reason=" << one_line(e.what()) << '\n';
  } catch (const ResourceError& e) {
    code = kResource;
    err << "olx: error kind=resource command=" << command << " reason=" << one_line(e.what()) << '\n';
  } catch (const NumericError& e) {
    code = kNumeric;
    err << "olx: error kind=numeric command=" << command << " reason=" << one_line(e.what()) << '\n';
  } catch (const std::exception& e) {
    code = kNumeric;
    err << "olx: error kind=internal command=" << (command.empty() ? "-" : command)
        << " reason=" << one_line(e.what()) << '\n';
  }
  return code;
}

}  // namespace olx::cli

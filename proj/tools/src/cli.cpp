#include "bmean/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "bmean/bmean.hpp"
#include "report.hpp"

namespace bmean::cli {

namespace {

constexpr const char* kGrammar =
    "expression grammar:\n"
    "  expr   := term (('+'|'-') term)*\n"
    "  term   := factor (('*'|'/') factor)*\n"
    "  factor := unary ('^' factor)?\n"
    "  unary  := '-'? atom\n"
    "  atom   := number | 'x' | 'pi' | 'e' | ident '(' expr ')' | '(' expr ')'\n"
    "  ident  := sin cos tan sinh cosh tanh exp ln sqrt atan atanh asin abs\n"
    "note: unary minus binds to an atom, so -x^2 means (-x)^2\n";

struct Options {
  std::string f, g, h, k;
  std::vector<double> domain;
  int grid = 21;
  int nodes = kDefaultNodes;
  int table_nodes = 101;
  int samples = kDefaultNodes;
  double equality_tol = 1e-9;
  double fit_tol = 1e-7;
  double constancy_tol = 1e-7;
  double det_floor = 1e-6;
  double representation_tol = 1e-7;
  std::string format = "text";
  std::string out_path;
  std::string csv_dir;

  // eval
  double x = NAN, y = NAN;
  std::string w;
  // family
  double alpha = 0.0;
  // recover-weight
  double v0 = NAN;
  double p_v0 = 1.0;
  std::string p_ref;
};

struct Report {
  Json json;
  std::string text;
  std::vector<Table> tables;
  int exit_code = kOk;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

OpenInterval domain_of(const Options& o) {
  if (o.domain.size() != 2) throw UsageError("--domain needs two values: lo hi");
  try {
    return OpenInterval(o.domain[0], o.domain[1]);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--domain: ") + e.what());
  }
}

const std::string& need(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
  return value;
}

double need(double value, const char* flag) {
  if (std::isnan(value)) throw UsageError(std::string(flag) + " is required");
  return value;
}

GeneratorPair pair_fg(const Options& o) {
  return GeneratorPair(parse(need(o.f, "--f")), parse(need(o.g, "--g")), domain_of(o));
}

GeneratorPair pair_hk(const Options& o) {
  return GeneratorPair(parse(need(o.h, "--h")), parse(need(o.k, "--k")), domain_of(o));
}

FitOptions fit_options(const Options& o) {
  FitOptions fit;
  fit.nodes = o.nodes;
  fit.fit_tolerance = o.fit_tol;
  fit.constancy_tolerance = o.constancy_tol;
  fit.determinant_floor = o.det_floor;
  return fit;
}

ClassifyOptions classify_options(const Options& o) {
  ClassifyOptions c;
  c.grid = o.grid;
  c.fit = fit_options(o);
  c.equality_tolerance = o.equality_tol;
  c.representation_tolerance = o.representation_tol;
  return c;
}

Json domain_json(const OpenInterval& d) { return Json::array({d.lo(), d.hi()}); }

Json pair_json(const GeneratorPair& p) {
  return Json{{"f", p.f().label()}, {"g", p.g().label()}};
}

/// Uniform nodes over the core of a domain, endpoints included.
std::vector<double> uniform_core(const OpenInterval& d, int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    x[static_cast<std::size_t>(i)] = d.core_lo() + (d.core_hi() - d.core_lo()) * i / (n - 1);
  return x;
}

Table tabulate(const std::string& name, const std::vector<double>& xs,
               const std::function<double(double)>& fn) {
  Table t{name, {"x", "value"}, {}};
  for (double x : xs) t.rows.push_back({x, fn(x)});
  return t;
}

void require_pair(const GeneratorPair& p, const Options& o) { require_valid(p, o.samples); }

Json fits_json(const std::optional<ConstantFit>& gamma, const std::optional<ConstantFit>& alpha,
               const std::optional<ConstantFit>& beta, const std::optional<QuadraticFormFit>& qa,
               const std::optional<QuadraticFormFit>& qb, const std::optional<PolynomialFit>& pp,
               const std::optional<PolynomialFit>& pq, const std::optional<double>& delta) {
  return Json{{"gamma", optional_json(gamma, "gamma")},
              {"alpha", optional_json(alpha, "cubic_ratio")},
              {"beta", optional_json(beta, "cubic_ratio")},
              {"quadratic_forms", {{"a", optional_json(qa)}, {"b", optional_json(qb)}}},
              {"polynomials", {{"p", optional_json(pp, "polynomial")},
                               {"q", optional_json(pq, "polynomial")}}},
              {"delta", delta ? number(*delta) : Json(nullptr)}};
}

// ---------------------------------------------------------------- commands

Report cmd_eval(const Options& o) {
  Report r;
  const double x = need(o.x, "--x"), y = need(o.y, "--y");
  const OpenInterval d = domain_of(o);
  const GeneratorPair pair = o.w.empty() ? pair_fg(o) : quasiarithmetic_pair(parse(o.w), d);
  require_pair(pair, o);
  if (!d.in_core(x) || !d.in_core(y))
    throw RangeError("x and y must lie in the core [" + format_double(d.core_lo()) + ", " +
                     format_double(d.core_hi()) + "] of the domain");
  const double m = bajraktarevic(pair, x, y);
  r.json = Json{{"report", "eval"}, {"pair", pair_json(pair)}, {"domain", domain_json(d)},
                {"x", x}, {"y", y}, {"mean", m}};
  r.text = format_double(m) + "\n";
  return r;
}

Report cmd_validate(const Options& o) {
  Report r;
  const GeneratorPair pair = pair_fg(o);
  const ValidationReport v = validate_pair(pair, o.samples);
  r.json = Json{{"report", "validate"}, {"pair", pair_json(pair)},
                {"domain", domain_json(pair.domain())}, {"validation", to_json(v)}};
  std::ostringstream os;
  os << "ok: " << (v.ok ? "true" : "false") << "\n"
     << "min g: " << format_double(v.min_g) << "\n"
     << "min |W|: " << format_double(v.min_abs_wronskian) << "\n"
     << "wronskian sign: " << v.wronskian_sign << "\n"
     << "samples: " << v.samples_used << "\n";
  if (!v.ok) os << "reason: " << v.reason << "\n";
  r.text = os.str();
  r.exit_code = v.ok ? kOk : kValidationFailure;
  return r;
}

Report cmd_classify(const Options& o) {
  Report r;
  const GeneratorPair a = pair_fg(o), b = pair_hk(o);
  require_pair(a, o);
  require_pair(b, o);
  const Classification c = classify_equality(a, b, classify_options(o));
  r.json = Json{{"report", "classify"},
                {"pair_a", pair_json(a)},
                {"pair_b", pair_json(b)},
                {"domain", domain_json(a.domain())},
                {"tag", std::string(tag_name(c.tag))},
                {"max_deviation", number(c.verdict.max_deviation)},
                {"equality_tolerance", number(c.verdict.tolerance)},
                {"grid_size", c.verdict.grid_size},
                {"witness", optional_json(c.witness)}};
  r.json.update(fits_json(c.gamma, c.alpha, c.beta, c.quad_a, c.quad_b, c.poly_p, c.poly_q, c.delta));
  r.json["evidence"] = to_json(c.evidence);
  r.text = summary(c);
  Table grid{"grid", {"x", "y", "meanA", "meanB", "diff"}, {}};
  for (const GridRow& row : compare_on_grid(a, b, o.grid))
    grid.rows.push_back({row.x, row.y, row.mean_a, row.mean_b, row.diff});
  r.tables.push_back(std::move(grid));
  r.exit_code = c.tag == Tag::Inconclusive ? kInconclusive : kOk;
  return r;
}

Report cmd_reduce(const Options& o) {
  Report r;
  const GeneratorPair fg = pair_fg(o), hk = pair_hk(o);
  require_pair(fg, o);
  require_pair(hk, o);
  const ReducedProblem red = reduce_problem(fg, hk);
  const double residual = substitution_residual(red, hk, 15);
  const EqualityVerdict original = means_equal_on_grid(fg, hk, o.grid, o.equality_tol);
  const EqualityVerdict reduced = means_equal_on_grid(red.qp(), red.phi_psi(), o.grid, o.equality_tol);
  r.json = Json{{"report", "reduce"},
                {"pair_a", pair_json(fg)},
                {"pair_b", pair_json(hk)},
                {"domain", domain_json(fg.domain())},
                {"J", domain_json(red.J)},
                {"nodes", o.table_nodes},
                {"substitution_residual", number(residual)},
                {"equal_original", original.equal},
                {"equal_reduced", reduced.equal}};
  std::ostringstream os;
  os << "J: (" << format_double(red.J.lo()) << ", " << format_double(red.J.hi()) << ")\n"
     << "substitution residual: " << format_double(residual) << "\n"
     << "means equal on I: " << (original.equal ? "yes" : "no")
     << ", on J: " << (reduced.equal ? "yes" : "no") << "\n";
  r.text = os.str();
  const auto xs = uniform_core(red.J, o.table_nodes);
  r.tables.push_back(tabulate("p", xs, [&](double u) { return red.p.value(u); }));
  r.tables.push_back(tabulate("q", xs, [&](double u) { return red.q.value(u); }));
  r.tables.push_back(tabulate("phi", xs, [&](double u) { return red.phi.value(u); }));
  r.tables.push_back(tabulate("psi", xs, [&](double u) { return red.psi.value(u); }));
  return r;
}

Report cmd_family(const Options& o) {
  Report r;
  const OpenInterval d = domain_of(o);
  const Expr w = parse(need(o.w, "--w"));
  const GeneratorPair pair = build_family_pair(o.alpha, w, d);
  const ConstantFit ratio = check_cubic_ratio(pair, fit_options(o));
  const SampledFunction table = canonical_w(pair);
  const double w0 = w(d.midpoint());
  double worst = 0.0;
  const auto xs = uniform_core(d, o.table_nodes);
  for (double x : xs) worst = std::max(worst, std::abs(table(x) - (w(x) - w0)));
  r.json = Json{{"report", "family"},
                {"alpha", o.alpha},
                {"w", w.to_string()},
                {"domain", domain_json(d)},
                {"pair", pair_json(pair)},
                {"cubic_ratio", to_json(ratio, "cubic_ratio")},
                {"canonical_w_deviation", number(worst)},
                {"nodes", o.table_nodes}};
  std::ostringstream os;
  os << "f: " << pair.f().label() << "\n"
     << "g: " << pair.g().label() << "\n"
     << "cubic ratio: " << format_double(ratio.value) << "\n"
     << "canonical w deviation: " << format_double(worst) << "\n";
  r.text = os.str();
  r.tables.push_back(tabulate("w", xs, [&](double x) { return table(x); }));
  return r;
}

Report cmd_verify(const Options& o) {
  Report r;
  const GeneratorPair a = pair_fg(o), b = pair_hk(o);
  require_pair(a, o);
  require_pair(b, o);
  const AssertionReport rep = verify_assertions(a, b, classify_options(o));
  r.json = Json{{"report", "verify"},
                {"pair_a", pair_json(a)},
                {"pair_b", pair_json(b)},
                {"domain", domain_json(a.domain())}};
  r.json.update(fits_json(rep.gamma, rep.alpha, rep.beta, rep.quad_a, rep.quad_b, rep.poly_p,
                          rep.poly_q, rep.delta));
  r.json["family_parameters"] = Json{
      {"alpha", rep.family_alpha ? number(*rep.family_alpha) : Json(nullptr)},
      {"beta", rep.family_beta ? number(*rep.family_beta) : Json(nullptr)}};
  r.json["evidence"] = to_json(rep.evidence);
  std::ostringstream os;
  for (const auto& [key, res] : rep.evidence)
    os << "(" << key << ") " << (res.passed ? "pass" : "fail") << "  residual "
       << format_double(res.residual) << "  " << res.detail << "\n";
  r.text = os.str();
  return r;
}

Report cmd_recover_weight(const Options& o) {
  Report r;
  const GeneratorPair pair = pair_fg(o);
  require_pair(pair, o);
  const OpenInterval& d = pair.domain();
  const double v0 = need(o.v0, "--v0");
  if (!d.in_core(v0)) throw RangeError("--v0 must lie in the core of the domain");
  const RatioRange range = ratio_range(pair);
  const MeanOracle mean = [&](double u, double v) { return bajraktarevic(pair, range, u, v); };
  const std::optional<Expr> ref = o.p_ref.empty() ? std::nullopt : std::optional(parse(o.p_ref));

  Table t{"p", {"x", "value"}, {}};
  int skipped = 0;
  double worst = 0.0;
  for (double u : uniform_core(d, o.table_nodes)) {
    if (std::abs(u - v0) < kCoreMargin * d.width()) {
      ++skipped;
      continue;
    }
    const double p = recover_weight(mean, v0, o.p_v0, u);
    t.rows.push_back({u, p});
    if (ref) worst = std::max(worst, std::abs(p - (*ref)(u)) / std::abs((*ref)(u)));
  }
  r.json = Json{{"report", "recover-weight"},
                {"pair", pair_json(pair)},
                {"domain", domain_json(d)},
                {"v0", v0},
                {"p_v0", o.p_v0},
                {"nodes", t.rows.size()},
                {"skipped_near_v0", skipped},
                {"max_relative_error", ref ? number(worst) : Json(nullptr)}};
  std::ostringstream os;
  os << "recovered " << t.rows.size() << " weights (skipped " << skipped << " near v0)\n";
  if (ref) os << "max relative error vs reference: " << format_double(worst) << "\n";
  r.text = os.str();
  r.tables.push_back(std::move(t));
  return r;
}

// ---------------------------------------------------------------- output

void emit(const Report& r, const Options& o, std::ostream& out) {
  if (o.format == "json") {
    out << r.json.dump(2) << "\n";
  } else if (o.format == "csv") {
    for (std::size_t i = 0; i < r.tables.size(); ++i) {
      if (r.tables.size() > 1) out << (i ? "\n" : "") << "# " << r.tables[i].name << "\n";
      out << to_csv(r.tables[i]);
    }
  } else {
    out << r.text;
  }
  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + o.out_path);
    f << r.json.dump(2) << "\n";
  }
  if (!o.csv_dir.empty()) {
    std::filesystem::create_directories(o.csv_dir);
    for (const Table& t : r.tables) {
      const auto path = std::filesystem::path(o.csv_dir) / (t.name + ".csv");
      std::ofstream f(path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write " + path.string());
      f << to_csv(t);
    }
  }
}

void add_shared_options(CLI::App& app, Options& o) {
  app.add_option("--f", o.f, "numerator generator f (or the weight numerator)");
  app.add_option("--g", o.g, "denominator generator g");
  app.add_option("--h", o.h, "second pair numerator h");
  app.add_option("--k", o.k, "second pair denominator k");
  app.add_option("--domain", o.domain, "open interval lo hi")->expected(2)->allow_extra_args(false);
  app.add_option("--grid", o.grid, "grid size for mean comparisons")
      ->check(CLI::Range(5, 1000));
  app.add_option("--nodes", o.nodes, "Chebyshev nodes for fits")->check(CLI::Range(8, 100000));
  app.add_option("--samples", o.samples, "Chebyshev samples for validation")
      ->check(CLI::Range(8, 100000));
  app.add_option("--table-nodes", o.table_nodes, "rows in emitted tables")
      ->check(CLI::Range(2, 100000));
  app.add_option("--equality-tol", o.equality_tol, "grid equality tolerance, times 1 + width")
      ->check(CLI::PositiveNumber);
  app.add_option("--fit-tol", o.fit_tol, "relative residual tolerance for fits")
      ->check(CLI::PositiveNumber);
  app.add_option("--constancy-tol", o.constancy_tol, "constancy tolerance, times 1 + |median|")
      ->check(CLI::PositiveNumber);
  app.add_option("--det-floor", o.det_floor, "normalized determinant floor for witnesses")
      ->check(CLI::PositiveNumber);
  app.add_option("--representation-tol", o.representation_tol,
                 "tolerance of the quasiarithmetic representation check, times 1 + width")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "stdout format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", o.out_path, "also write the JSON report to this file");
  app.add_option("--csv-dir", o.csv_dir, "also write every table as <dir>/<name>.csv");
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Bajraktarevic mean laboratory", "bmean"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_config("--config", "", "key = value file; flags override it")->check(CLI::ExistingFile);
  app.allow_config_extras(CLI::config_extras_mode::error);
  add_shared_options(app, o);
  app.footer(kGrammar);

  auto* eval = app.add_subcommand("eval", "print B_{f,g}(x, y), or the quasiarithmetic mean of --w");
  eval->add_option("--x", o.x, "first argument")->required();
  eval->add_option("--y", o.y, "second argument")->required();
  eval->add_option("--w", o.w, "quasiarithmetic generator; replaces --f/--g");
  app.add_subcommand("validate", "check that (f, g) generates a strict mean");
  app.add_subcommand("classify", "decide B_{f,g} = B_{h,k} and classify the mechanism");
  app.add_subcommand("reduce", "weighted form of the equality problem on J");
  auto* family = app.add_subcommand("family", "S/C family pair over w and its canonical w table");
  family->add_option("--alpha", o.alpha, "family parameter")->required();
  family->add_option("--w", o.w, "inner function w")->required();
  app.add_subcommand("verify", "evidence for every characterization of the equality");
  auto* recover = app.add_subcommand("recover-weight", "weights of the mean B_{f,g} from the mean");
  recover->add_option("--v0", o.v0, "base point")->required();
  recover->add_option("--p-v0", o.p_v0, "weight at the base point")->check(CLI::PositiveNumber);
  recover->add_option("--p", o.p_ref, "reference weight expression for an error report");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    Report r;
    if (name == "eval") r = cmd_eval(o);
    else if (name == "validate") r = cmd_validate(o);
    else if (name == "classify") r = cmd_classify(o);
    else if (name == "reduce") r = cmd_reduce(o);
    else if (name == "family") r = cmd_family(o);
    else if (name == "verify") r = cmd_verify(o);
    else r = cmd_recover_weight(o);
    emit(r, o, out);
    return r.exit_code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n\n" << kGrammar;
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const QuadratureError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }
}

}  // namespace bmean::cli

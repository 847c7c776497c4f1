#include "dcpsf/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <variant>
#include <vector>

#include "dcpsf/errors.hpp"
#include "dcpsf/hermite.hpp"

namespace dcpsf::cli {
namespace {

using json = nlohmann::ordered_json;
using Cell = std::variant<std::int64_t, double>;
using Row = std::vector<Cell>;

// A command-line or input-format problem; maps to the usage exit code.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string fmt(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw UsageError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<double> parse_list(std::string_view s) {
  std::vector<double> out;
  for (auto part : split(s, ',')) out.push_back(parse_double(part));
  return out;
}

json spec_json(const ThetaSpec& spec) {
  json terms = json::array();
  for (const auto& t : spec.terms()) {
    json factors = json::array();
    for (const auto& f : t.factors) {
      factors.push_back({{"kind", static_cast<int>(f.kind)},
                         {"power", f.power},
                         {"scale", {f.scale.num(), f.scale.den()}}});
    }
    terms.push_back({{"coeff", t.coeff}, {"factors", factors}});
  }
  return {{"dim_d", spec.dim()}, {"terms", terms}};
}

json report_json(const VerificationReport& r) {
  json j = {{"lhs", r.lhs},
            {"rhs", r.rhs},
            {"residual", r.residual},
            {"L_used", r.L_used},
            {"L_star_used", r.L_star_used},
            {"tail_lhs", r.tail_lhs},
            {"tail_rhs", r.tail_rhs},
            {"transform_err", r.transform_err},
            {"rounding", r.rounding},
            {"tol", r.tol},
            {"pass", r.pass},
            {"experimental", r.experimental}};
  auto table = [](const std::vector<TableRow>& rows) {
    json t = json::array();
    for (const auto& row : rows) t.push_back(json::array({row.A, row.N, row.value}));
    return t;
  };
  if (!r.per_term_table.empty()) j["per_term_table"] = table(r.per_term_table);
  if (!r.per_term_table_dual.empty()) {
    j["per_term_table_dual"] = table(r.per_term_table_dual);
  }
  return j;
}

std::string fmt(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return fmt(std::get<double>(c));
}

json to_json(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<double>(c);
}

// Writes a table as CSV or as a JSON array of objects.
void write_table(std::ostream& out, const std::string& format,
                 const std::vector<std::string>& columns,
                 const std::vector<Row>& rows) {
  if (format == "csv") {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "," : "") << columns[i];
    }
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << fmt(row[i]);
      out << '\n';
    }
    return;
  }
  json arr = json::array();
  for (const auto& row : rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = to_json(row[i]);
    arr.push_back(obj);
  }
  out << arr.dump(2) << '\n';
}

struct Common {
  std::string spec_path;
  std::string preset;
  std::optional<double> dim;
  std::string f_text = "1,0,1";
  double tol = 1e-10;
  std::size_t L_cap = 200000;
  std::string format;
  std::string out_path;
};

ThetaSpec load_spec(const Common& c) {
  if (!c.spec_path.empty()) {
    std::ifstream in(c.spec_path);
    if (!in) throw UsageError("cannot read spec file '" + c.spec_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
  }
  if (c.preset.empty()) throw UsageError("give either --spec or --preset");
  if (!c.dim) throw UsageError("--preset needs --dim");
  return ThetaSpec::preset(c.preset, *c.dim);
}

void add_spec_options(CLI::App* app, Common& c) {
  auto* spec = app->add_option("--spec", c.spec_path, "ThetaSpec JSON file");
  auto* preset = app->add_option("--preset", c.preset, "zd | dd | theta4d")
                     ->check(CLI::IsMember({"zd", "dd", "theta4d"}));
  spec->excludes(preset);
  app->add_option("--dim", c.dim, "dimension parameter d");
}

void add_output_options(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--out", c.out_path, "output file (default: stdout)");
}

}  // namespace

ThetaSpec parse_spec(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidSpec(std::string("spec is not valid JSON: ") + e.what());
  }
  try {
    std::vector<ThetaTerm> terms;
    for (const auto& t : j.at("terms")) {
      ThetaTerm term;
      term.coeff = t.at("coeff").get<double>();
      for (const auto& f : t.at("factors")) {
        ThetaFactor factor;
        factor.kind = theta_kind_from_int(f.at("kind").get<int>());
        factor.power = f.at("power").get<double>();
        const auto& s = f.at("scale");
        if (!s.is_array() || s.size() != 2) {
          throw InvalidSpec("scale must be [num, den]");
        }
        factor.scale = Rational(s[0].get<std::int64_t>(), s[1].get<std::int64_t>());
        term.factors.push_back(factor);
      }
      terms.push_back(std::move(term));
    }
    return ThetaSpec(j.at("dim_d").get<double>(), std::move(terms));
  } catch (const json::exception& e) {
    throw InvalidSpec(std::string("malformed spec: ") + e.what());
  } catch (const DomainError& e) {
    throw InvalidSpec(std::string("malformed spec: ") + e.what());
  }
}

std::string spec_to_json(const ThetaSpec& spec) { return spec_json(spec).dump(2); }

std::string report_to_json(const VerificationReport& report) {
  return report_json(report).dump(2);
}

GaussPoly parse_gausspoly(std::string_view text) {
  std::vector<GaussTerm> terms;
  for (auto part : split(text, ';')) {
    if (part.find_first_not_of(' ') == std::string_view::npos) continue;
    const auto fields = split(part, ',');
    if (fields.size() != 3) {
      throw UsageError("function term '" + std::string(part) +
                       "' must read c,k,alpha");
    }
    const double k = parse_double(fields[1]);
    if (k < 0.0 || k != std::floor(k) || k > 1000.0) {
      throw UsageError("power k must be a small non-negative integer");
    }
    terms.push_back({parse_double(fields[0]), static_cast<int>(k),
                     parse_double(fields[2])});
  }
  if (terms.empty()) throw UsageError("empty function descriptor");
  try {
    return GaussPoly(std::move(terms));
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized theta series, their duals and the dimensionally "
               "continued Poisson summation formula"};
  app.require_subcommand(1);
  Common c;

  auto* coeffs = app.add_subcommand("theta-coeffs", "coefficients N_l and exponents A_l");
  add_spec_options(coeffs, c);
  double order = 10.0;
  coeffs->add_option("--L", order, "largest exponent to include");
  coeffs->add_option("--L-cap", c.L_cap, "maximum number of grid steps");
  add_output_options(coeffs, c);

  auto* dual_cmd = app.add_subcommand("dual", "dual spec under the Jacobi transformation");
  add_spec_options(dual_cmd, c);
  dual_cmd->add_option("--out", c.out_path, "output file (default: stdout)");

  auto* transform = app.add_subcommand("transform", "radial Fourier transform table");
  transform->add_option("--f", c.f_text, "c,k,alpha;... for sum c r^{2k} e^{-alpha r^2}");
  transform->add_option("--dim", c.dim, "dimension parameter d")->required();
  std::string p_text = "0,0.5,1,2";
  transform->add_option("--p", p_text, "comma-separated radii");
  add_output_options(transform, c);

  auto* verify_cmd = app.add_subcommand("verify", "check the summation formula");
  add_spec_options(verify_cmd, c);
  verify_cmd->add_option("--f", c.f_text, "c,k,alpha;... for sum c r^{2k} e^{-alpha r^2}");
  verify_cmd->add_option("--tol", c.tol, "tolerance")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--L-cap", c.L_cap, "maximum number of grid steps")
      ->check(CLI::PositiveNumber);
  bool table = false;
  verify_cmd->add_flag("--table", table, "include per-shell rows");
  add_output_options(verify_cmd, c);

  auto* jacobi = app.add_subcommand("jacobi-check", "Jacobi imaginary transformation residuals");
  std::string t_text = "0.5,0.8,1,1.6,2";
  jacobi->add_option("--t", t_text, "comma-separated t > 0");
  add_output_options(jacobi, c);

  auto* hermite = app.add_subcommand("hermite-demo", "Gaussian Hermite coefficients");
  std::string alpha_text = "0.3,0.5,1,2";
  int n_max = 12;
  hermite->add_option("--alpha", alpha_text, "comma-separated alpha > 0");
  hermite->add_option("--n", n_max, "largest index")->check(CLI::NonNegativeNumber);
  add_output_options(hermite, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  if (c.format.empty()) c.format = *verify_cmd ? "json" : "csv";

  std::ofstream file;
  std::ostream* sink = &out;
  if (!c.out_path.empty()) {
    file.open(c.out_path);
    if (!file) {
      err << "cannot write '" << c.out_path << "'\n";
      return kUsage;
    }
    sink = &file;
  }

  try {
    if (*coeffs) {
      if (!(order >= 0.0)) throw UsageError("--L must be >= 0");
      const ThetaSpec spec = load_spec(c);
      const auto bound = Rational::approximate(order, 1000, 1e-12);
      const Exponent max_exp = bound ? Exponent(*bound) : Exponent::real(order);
      const QSeries s = theta::build(spec, max_exp);
      if (s.trunc_order() > c.L_cap) {
        err << "series needs " << s.trunc_order() << " grid steps, over --L-cap "
            << c.L_cap << '\n';
        return kCap;
      }
      std::vector<Row> rows;
      for (std::size_t l = 0; l <= s.trunc_order(); ++l) {
        rows.push_back({static_cast<std::int64_t>(l), s.exponent(l), s.coeff(l)});
      }
      write_table(*sink, c.format, {"l", "A_l", "N_l"}, rows);
      return kOk;
    }
    if (*dual_cmd) {
      *sink << spec_to_json(theta::dual(load_spec(c))) << '\n';
      return kOk;
    }
    if (*transform) {
      const GaussPoly f = parse_gausspoly(c.f_text);
      std::vector<Row> rows;
      for (double p : parse_list(p_text)) {
        const double closed = ft_closed(f, p, *c.dim);
        const TransformResult q = ft_quadrature(f, p, *c.dim);
        rows.push_back({p, closed, std::fabs(q.value - closed) + q.error});
      }
      write_table(*sink, c.format, {"p", "f_hat", "err_est"}, rows);
      return kOk;
    }
    if (*verify_cmd) {
      const ThetaSpec spec = load_spec(c);
      const GaussPoly f = parse_gausspoly(c.f_text);
      SummationOptions opts;
      opts.L_cap = c.L_cap;
      opts.keep_table = table;
      const VerificationReport rep = verify(spec, f, c.tol, {}, opts);
      if (c.format == "json") {
        *sink << report_to_json(rep) << '\n';
      } else {
        write_table(*sink, "csv",
                    {"lhs", "rhs", "residual", "L_used", "L_star_used",
                     "tail_lhs", "tail_rhs", "pass"},
                    {{rep.lhs, rep.rhs, rep.residual,
                      static_cast<std::int64_t>(rep.L_used),
                      static_cast<std::int64_t>(rep.L_star_used), rep.tail_lhs,
                      rep.tail_rhs, std::int64_t{rep.pass ? 1 : 0}}});
      }
      err << (rep.pass ? "PASS" : "FAIL") << ": residual " << fmt(rep.residual)
          << " with L = " << rep.L_used << ", L* = " << rep.L_star_used
          << ", tails " << fmt(rep.tail_lhs) << " / " << fmt(rep.tail_rhs)
          << '\n';
      return rep.pass ? kOk : kFail;
    }
    if (*jacobi) {
      std::vector<Row> rows;
      bool ok = true;
      for (double t : parse_list(t_text)) {
        for (auto kind : {ThetaKind::two, ThetaKind::three, ThetaKind::four}) {
          const double r = theta::jacobi_residual(kind, t);
          ok = ok && r < 1e-12;
          rows.push_back({static_cast<std::int64_t>(kind), t, r});
        }
      }
      write_table(*sink, c.format, {"kind", "t", "residual"}, rows);
      return ok ? kOk : kFail;
    }
    if (*hermite) {
      std::vector<Row> rows;
      bool ok = true;
      for (double alpha : parse_list(alpha_text)) {
        for (int n = 0; n <= n_max; ++n) {
          const double closed = gaussian_hermite_coeff(alpha, n);
          const double quad = hermite_coeff_quadrature(
              [alpha](double x) { return std::exp(-alpha * x * x); }, n);
          const double diff = std::fabs(closed - quad);
          ok = ok && diff < 1e-9;
          rows.push_back({alpha, static_cast<std::int64_t>(n), closed, quad, diff});
        }
      }
      write_table(*sink, c.format,
                  {"alpha", "n", "closed_form", "quadrature", "abs_diff"}, rows);
      return ok ? kOk : kFail;
    }
  } catch (const ToleranceNotMet& e) {
    err << "resource cap: " << e.what() << '\n';
    return kCap;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace dcpsf::cli

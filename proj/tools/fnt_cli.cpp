// Command-line front end: interpolation, evaluation, differentiation,
// convergence studies, timing benchmarks, and projection inspection.
//
// Exit codes: 0 success, 1 usage or data errors, 2 numerical failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fnt/coeff_file.hpp"
#include "fnt/errors.hpp"
#include "fnt/evaluator.hpp"
#include "fnt/multiindex.hpp"
#include "fnt/nodes.hpp"
#include "fnt/testfn.hpp"
#include "fnt/transform.hpp"
#include "fnt/version.hpp"

namespace {

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_p(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "inf" || t == "infinity" || t == "oo")
    return std::numeric_limits<double>::infinity();
  double p = 0.0;
  try {
    std::size_t used = 0;
    p = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
  } catch (const std::exception&) {
    throw fnt::ArgumentError("cannot parse p value '" + text + "'");
  }
  if (!(p > 0.0)) throw fnt::ArgumentError("p must be positive");
  return p;
}

std::string format_p(double p) {
  if (std::isinf(p)) return "inf";
  std::ostringstream os;
  os << p;
  return os.str();
}

std::string fmt_g(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_ms(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string row_text(const std::vector<int>& row) {
  std::string s = "(";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(row[i]);
  }
  return s + ")";
}

std::string tube_text(const fnt::TubeProjections& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (i) s += ",";
    s += row_text(t.rows[i]);
  }
  return s + ")";
}

std::string row_text64(const std::vector<std::int64_t>& row) {
  std::string s = "(";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(row[i]);
  }
  return s + ")";
}

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

template <class F>
double median_ms(int reps, F&& body) {
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(reps));
  for (int r = 0; r < reps; ++r) {
    const Clock::time_point t0 = Clock::now();
    body();
    times.push_back(ms_between(t0, Clock::now()));
  }
  std::sort(times.begin(), times.end());
  const std::size_t n = times.size();
  return n % 2 ? times[n / 2] : 0.5 * (times[n / 2 - 1] + times[n / 2]);
}

void ensure_finite(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw NumericalFailure(std::string(what) + " produced non-finite values");
}

fnt::BasisKind parse_basis(const std::string& name) {
  if (name == "newton") return fnt::BasisKind::newton;
  if (name == "chebyshev") return fnt::BasisKind::chebyshev;
  throw fnt::ArgumentError("unknown basis '" + name + "' (newton or chebyshev)");
}

std::vector<double> sample_on_grid(const fnt::NonTensorialGrid& grid,
                                   const fnt::TestFunction& fn) {
  const std::int64_t n = grid.set->size();
  std::vector<double> values(static_cast<std::size_t>(n));
  for (std::int64_t r = 1; r <= n; ++r) {
    const std::vector<double> x = grid.point(r);
    values[static_cast<std::size_t>(r) - 1] = fn.fn(x);
  }
  return values;
}

// one point per row, m comma-separated columns; '#' comments and one optional
// header row are tolerated
std::vector<double> read_points_csv(const std::string& path, int m) {
  std::ifstream is(path);
  if (!is) throw fnt::IoError("cannot open points file '" + path + "'");
  std::vector<double> pts;
  std::string line;
  bool first_data = true;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(trimmed);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    std::vector<double> row;
    bool parsed = true;
    for (const std::string& f : fields) {
      try {
        std::size_t used = 0;
        std::string fv = f;
        fv.erase(0, fv.find_first_not_of(" \t"));
        fv.erase(fv.find_last_not_of(" \t") + 1);
        row.push_back(std::stod(fv, &used));
        if (used != fv.size()) parsed = false;
      } catch (const std::exception&) {
        parsed = false;
      }
      if (!parsed) break;
    }
    if (!parsed) {
      if (first_data) {  // header row
        first_data = false;
        continue;
      }
      throw fnt::IoError("points file '" + path + "': cannot parse line " +
                         std::to_string(lineno));
    }
    first_data = false;
    if (static_cast<int>(row.size()) != m)
      throw fnt::ArgumentError("points file '" + path + "': line " + std::to_string(lineno) +
                               " has " + std::to_string(row.size()) + " columns, need " +
                               std::to_string(m));
    pts.insert(pts.end(), row.begin(), row.end());
  }
  return pts;
}

class OutStream {
 public:
  explicit OutStream(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::trunc);
      if (!file_) throw fnt::IoError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct CommonSpace {
  std::string function;
  int m = 1;
  int n = 0;
  std::vector<int> n_list;
  std::string p_text = "2";
  std::string basis = "newton";
  std::uint64_t seed = 42;
  std::int64_t samples = 100000;
  int reps = 10;
  std::string out;
  std::string in;
  int axis = 1;
  std::string points;
  // projections positionals
  int pm = 0, pn = 0;
  std::string pp;
};

void cmd_projections(const CommonSpace& c) {
  const double p = parse_p(c.pp);
  auto set = std::make_shared<fnt::DownwardClosedSet>(fnt::DownwardClosedSet::lp_set(c.pm, c.pn, p));
  const fnt::TubeProjections t = fnt::tube_projections(*set);
  const fnt::FiberProjections f = fnt::fibers_from_tubes(t);
  const fnt::FiberTubeProjections s = fnt::fiber_tubes_from_tubes(t);
  std::ostringstream os;
  os << "m=" << c.pm << " n=" << c.pn << " p=" << format_p(p) << " |A|=" << set->size()
     << " ||T||=" << t.norm() << " kappa=" << fmt_g(fnt::carry_count(t)) << "\n";
  for (int i = 0; i < set->dim(); ++i)
    os << "T" << (i + 1) << ": " << row_text(t.rows[static_cast<std::size_t>(i)]) << "\n";
  for (int i = 0; i < set->dim(); ++i)
    os << "F" << (i + 1) << ": " << row_text64(f.rows[static_cast<std::size_t>(i)]) << "\n";
  for (int i = 0; i < set->dim(); ++i) {
    os << "S" << (i + 1) << ": ";
    const std::vector<fnt::TubeProjections>& level = s.levels[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < level.size(); ++j) {
      if (j) os << " | ";
      os << tube_text(level[j]);
    }
    os << "\n";
  }
  std::cout << os.str();
}

void cmd_transform(const CommonSpace& c) {
  const fnt::TestFunction& fn = fnt::test_function(c.function);
  if (c.m < fn.min_dim)
    throw fnt::ArgumentError("function '" + fn.name + "' needs at least " +
                             std::to_string(fn.min_dim) + " dimensions");
  const double p = parse_p(c.p_text);
  const fnt::BasisKind kind = parse_basis(c.basis);
  auto set = std::make_shared<fnt::DownwardClosedSet>(fnt::DownwardClosedSet::lp_set(c.m, c.n, p));
  const fnt::NonTensorialGrid grid = fnt::leja_chebyshev_grid(set);
  const Clock::time_point t0 = Clock::now();
  const fnt::TransformPlan plan = fnt::plan(grid, kind);
  const Clock::time_point t1 = Clock::now();
  const std::vector<double> values = sample_on_grid(grid, fn);
  const Clock::time_point t2 = Clock::now();
  const std::vector<double> coeffs = fnt::fnt_forward(plan, values);
  const Clock::time_point t3 = Clock::now();
  ensure_finite(coeffs, "transform");
  std::cout << "|A|=" << set->size() << "\n"
            << "kappa=" << fmt_g(plan.carry_count()) << "\n"
            << "plan_ms=" << fmt_ms(ms_between(t0, t1)) << "\n"
            << "transform_ms=" << fmt_ms(ms_between(t2, t3)) << "\n";
  if (!c.out.empty()) {
    fnt::CoefficientFile file;
    file.dim = c.m;
    file.kind = kind;
    for (const fnt::AxisNodes& ax : grid.axes) file.axis_nodes.push_back(ax.points);
    file.tubes = plan.tubes();
    file.coeffs = coeffs;
    fnt::write_coefficient_file(c.out, file);
  }
}

void cmd_evaluate(const CommonSpace& c) {
  const fnt::CoefficientFile file = fnt::read_coefficient_file(c.in);
  const fnt::TransformPlan plan = fnt::plan_from_file(file);
  const std::vector<double> pts = read_points_csv(c.points, plan.dim());
  const std::vector<double> vals = fnt::eval_points(plan, file.coeffs, pts);
  ensure_finite(vals, "evaluate");
  OutStream out(c.out);
  out.get() << "value\n";
  for (double v : vals) out.get() << fmt_full(v) << "\n";
}

void cmd_diff(const CommonSpace& c) {
  const fnt::CoefficientFile file = fnt::read_coefficient_file(c.in);
  const fnt::TransformPlan plan = fnt::plan_from_file(file);
  const std::vector<double> dcoeffs = fnt::diff_coeffs(plan, file.coeffs, c.axis);
  ensure_finite(dcoeffs, "diff");
  fnt::CoefficientFile outfile = file;
  outfile.coeffs = dcoeffs;
  fnt::write_coefficient_file(c.out, outfile);
}

void cmd_convergence(const CommonSpace& c) {
  const fnt::TestFunction& fn = fnt::test_function(c.function);
  if (c.m < fn.min_dim)
    throw fnt::ArgumentError("function '" + fn.name + "' needs at least " +
                             std::to_string(fn.min_dim) + " dimensions");
  if (c.n_list.empty()) throw fnt::ArgumentError("convergence: need at least one n");
  const double p = parse_p(c.p_text);
  const fnt::BasisKind kind = parse_basis(c.basis);
  OutStream out(c.out);
  out.get() << "# fnt " << fnt::kVersion << " convergence function=" << fn.name << " m=" << c.m
            << " p=" << format_p(p) << " basis=" << c.basis << " samples=" << c.samples
            << " seed=" << c.seed << " reps=" << c.reps << "\n";
  out.get() << "n,cardinality,max_rel_error,t_plan_ms,t_transform_ms\n";
  for (int n : c.n_list) {
    if (n < 0) throw fnt::ArgumentError("convergence: n must be non-negative");
    auto set = std::make_shared<fnt::DownwardClosedSet>(fnt::DownwardClosedSet::lp_set(c.m, n, p));
    const fnt::NonTensorialGrid grid = fnt::leja_chebyshev_grid(set);
    std::unique_ptr<fnt::TransformPlan> plan;
    const double plan_ms =
        median_ms(c.reps, [&] { plan = std::make_unique<fnt::TransformPlan>(fnt::plan(grid, kind)); });
    const std::vector<double> values = sample_on_grid(grid, fn);
    std::vector<double> coeffs(values.size());
    fnt::Workspace ws;
    const double transform_ms =
        median_ms(c.reps, [&] { fnt::fnt_forward(*plan, values, coeffs, ws); });
    ensure_finite(coeffs, "transform");
    const double err = fnt::max_rel_error(*plan, coeffs, fn.fn, c.samples, c.seed);
    out.get() << n << "," << set->size() << "," << fmt_full(err) << "," << fmt_ms(plan_ms) << ","
              << fmt_ms(transform_ms) << "\n";
  }
}

void cmd_bench(const CommonSpace& c) {
  if (c.n_list.empty()) throw fnt::ArgumentError("bench: need at least one n");
  const double p = parse_p(c.p_text);
  const fnt::BasisKind kind = parse_basis(c.basis);
  OutStream out(c.out);
  out.get() << "# fnt " << fnt::kVersion << " bench m=" << c.m << " p=" << format_p(p)
            << " basis=" << c.basis << " seed=" << c.seed << " reps=" << c.reps << "\n";
  out.get() << "op,n,cardinality,reps,median_ms\n";
  for (int n : c.n_list) {
    auto set = std::make_shared<fnt::DownwardClosedSet>(fnt::DownwardClosedSet::lp_set(c.m, n, p));
    const fnt::NonTensorialGrid grid = fnt::leja_chebyshev_grid(set);
    std::unique_ptr<fnt::TransformPlan> plan;
    const double plan_ms =
        median_ms(c.reps, [&] { plan = std::make_unique<fnt::TransformPlan>(fnt::plan(grid, kind)); });
    const std::int64_t card = set->size();
    std::vector<double> values(static_cast<std::size_t>(card));
    fnt::SplitMix64 rng(c.seed);
    for (double& v : values) v = rng.uniform_pm1();
    std::vector<double> outv(values.size());
    fnt::Workspace ws;
    const double fwd_ms = median_ms(c.reps, [&] { fnt::fnt_forward(*plan, values, outv, ws); });
    const double inv_ms = median_ms(c.reps, [&] { fnt::fnt_inverse(*plan, values, outv, ws); });
    const double diff_ms =
        median_ms(c.reps, [&] { fnt::diff_coeffs(*plan, values, outv, 1, ws); });
    out.get() << "plan," << n << "," << card << "," << c.reps << "," << fmt_ms(plan_ms) << "\n"
              << "forward," << n << "," << card << "," << c.reps << "," << fmt_ms(fwd_ms) << "\n"
              << "inverse," << n << "," << card << "," << c.reps << "," << fmt_ms(inv_ms) << "\n"
              << "diff," << n << "," << card << "," << c.reps << "," << fmt_ms(diff_ms) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fnt: polynomial interpolation, evaluation and differentiation in downward "
               "closed spaces"};
  app.require_subcommand(1);
  CommonSpace c;

  CLI::App* proj = app.add_subcommand("projections", "print the tube, fiber and fiber-tube "
                                                     "projection tableau of an lp set");
  proj->add_option("m", c.pm, "dimension")->required();
  proj->add_option("n", c.pn, "degree bound")->required();
  proj->add_option("p", c.pp, "lp exponent (number or 'inf')")->required();
  proj->callback([&] { cmd_projections(c); });

  CLI::App* tra = app.add_subcommand("transform", "interpolate a named function on an lp set "
                                                  "and write a coefficient file");
  tra->add_option("--function", c.function, "test function name")->required();
  tra->add_option("--m", c.m, "dimension")->required();
  tra->add_option("--n", c.n, "degree bound")->required();
  tra->add_option("--p", c.p_text, "lp exponent (number or 'inf')")->capture_default_str();
  tra->add_option("--basis", c.basis, "newton or chebyshev")->capture_default_str();
  tra->add_option("--out", c.out, "coefficient file to write");
  tra->callback([&] { cmd_transform(c); });

  CLI::App* eva = app.add_subcommand("evaluate", "evaluate a coefficient file at points read "
                                                 "from a CSV (one point per row, m columns)");
  eva->add_option("--in", c.in, "coefficient file")->required();
  eva->add_option("--points", c.points, "points CSV")->required();
  eva->add_option("--out", c.out, "output CSV (default stdout)");
  eva->callback([&] { cmd_evaluate(c); });

  CLI::App* dif = app.add_subcommand("diff", "differentiate a coefficient file along one axis");
  dif->add_option("--in", c.in, "coefficient file")->required();
  dif->add_option("--axis", c.axis, "axis, 1-based")->required();
  dif->add_option("--out", c.out, "coefficient file to write")->required();
  dif->callback([&] { cmd_diff(c); });

  CLI::App* con = app.add_subcommand(
      "convergence",
      "per-degree interpolation error study; the error is max |q-f| over seeded uniform "
      "samples divided by the sample-wide max |f|");
  con->add_option("--function", c.function, "test function name")->required();
  con->add_option("--m", c.m, "dimension")->required();
  con->add_option("--p", c.p_text, "lp exponent (number or 'inf')")->capture_default_str();
  con->add_option("--n", c.n_list, "comma-separated degree list")->required()->delimiter(',');
  con->add_option("--basis", c.basis, "newton or chebyshev")->capture_default_str();
  con->add_option("--samples", c.samples, "sample count")->capture_default_str();
  con->add_option("--seed", c.seed, "PRNG seed")->capture_default_str();
  con->add_option("--reps", c.reps, "timing repetitions (median)")->capture_default_str();
  con->add_option("--out", c.out, "output CSV (default stdout)");
  con->callback([&] { cmd_convergence(c); });

  CLI::App* ben = app.add_subcommand("bench", "median timings for plan/forward/inverse/diff");
  ben->add_option("--m", c.m, "dimension")->required();
  ben->add_option("--p", c.p_text, "lp exponent (number or 'inf')")->capture_default_str();
  ben->add_option("--n", c.n_list, "comma-separated degree list")->required()->delimiter(',');
  ben->add_option("--basis", c.basis, "newton or chebyshev")->capture_default_str();
  ben->add_option("--seed", c.seed, "PRNG seed for the input vector")->capture_default_str();
  ben->add_option("--reps", c.reps, "timing repetitions (median)")->capture_default_str();
  ben->add_option("--out", c.out, "output CSV (default stdout)");
  ben->callback([&] { cmd_bench(c); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const NumericalFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fnt::FactorizationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fnt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

/* Copyright 2026 The metaplectic authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "metaplectic/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "metaplectic/discrete_metaplectic.hpp"
#include "metaplectic/io.hpp"
#include "metaplectic/mixed_norms.hpp"
#include "metaplectic/shift_invertible.hpp"
#include "metaplectic/tf_distributions.hpp"

namespace metaplectic {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using Mat = Matrix<double>;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !(v > 0.0))
    throw InvalidArgumentError("exponent must be a positive number or 'inf', got '" + s + "'");
  return v;
}

/// A JSON matrix file, or "@NAME" / "@A_tau:TAU" for a built-in matrix of level d.
io::MatrixFile load_matrix(const std::string& where, std::size_t d) {
  if (!where.empty() && where[0] == '@') {
    std::string name = where.substr(1);
    NamedSpec<Rational> spec;
    spec.d = d;
    const std::size_t colon = name.find(':');
    if (colon != std::string::npos) {
      spec.tau = parse_rational(name.substr(colon + 1));
      name = name.substr(0, colon);
    }
    const auto kind = parse_named_kind(name);
    if (!kind) throw IoError("unknown matrix name '" + name + "'");
    spec.kind = *kind;
    if (*kind == NamedKind::D_E || *kind == NamedKind::V_C || *kind == NamedKind::V_C_T ||
        *kind == NamedKind::Lift)
      throw IoError("'" + name + "' needs a parameter matrix; use 'symplectic named --param'");
    if (*kind == NamedKind::A_tau && colon == std::string::npos)
      throw IoError("A_tau needs a value, e.g. @A_tau:1/2");
    io::MatrixFile mf;
    mf.mode = io::MatrixMode::rational;
    mf.exact = make_named(spec);
    mf.value = to_double(mf.exact);
    return mf;
  }
  return io::read_matrix(where);
}

bool exact(const io::MatrixFile& m) { return m.mode == io::MatrixMode::rational; }

double float_tol(const Mat& m, double tol) {
  const double s = std::max(1.0, max_abs(m));
  return tol * s * s;
}

void require_square_even(const Mat& m, std::size_t multiple, const std::string& what) {
  if (!m.square() || m.rows() == 0 || m.rows() % multiple != 0)
    throw IoError(what + ": expected a square matrix with size divisible by " +
                  std::to_string(multiple) + ", got " + m.shape_string());
}

template <class T>
void write_matrix_as(const fs::path& path, const Matrix<T>& m, std::ostream& out) {
  io::write_matrix(path, m);
  out << "wrote " << path.string() << "\n";
}

std::string factor_name(const Factor& f) {
  if (std::holds_alternative<FourierFactor>(f)) return "J";
  if (std::holds_alternative<DilationFactor>(f)) return "D_E";
  if (std::holds_alternative<ChirpFactor>(f)) return "V_C";
  return "FreeKernel";
}

std::vector<int> parse_steps(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw InvalidArgumentError("--steps expects comma-separated integers, got '" + text + "'");
    out.push_back(v);
  }
  return out;
}

struct Options {
  std::string command;
  std::string sub;

  std::string matrix;
  std::string out;
  std::string out_dir = ".";
  double tol = -1.0;
  bool executable = false;

  std::string e_file, c_file, s_file;
  std::string named_kind;
  std::size_t dim = 1;
  std::string tau;
  std::string param;

  std::string signal, window, in;
  std::string csv;
  bool normal_form = false;
  std::string route = "auto";

  std::string p = "2", q = "2";
  std::string weight = "1";
  bool counting = false;

  std::string report;
  std::uint64_t seed = 1;
  int n = 0;
  std::size_t trials = 0;
  double bound = 10.0;
  double noise = 0.02;
  std::string f1, f2, g1, g2, gamma;
  std::string steps;
  std::string form = "modulus";

  double range_db = 60.0;
};

MixedNormParams norm_params(const Options& o) {
  MixedNormParams m;
  m.p = parse_exponent(o.p);
  m.q = parse_exponent(o.q);
  m.weight = parse_weight(o.weight);
  m.measure = o.counting ? Measure::counting : Measure::riemann;
  return m;
}

WignerRoute route_of(const Options& o) {
  if (o.normal_form) return WignerRoute::normal_form;
  const auto r = parse_route(o.route);
  if (!r) throw InvalidArgumentError("unknown route '" + o.route + "'");
  return *r;
}

// ---------------------------------------------------------------------------

int cmd_check(const Options& o, std::ostream& out) {
  const io::MatrixFile mf = load_matrix(o.matrix, o.dim);
  const Mat& a = mf.value;
  bool ok = a.square() && a.rows() % 2 == 0 && a.rows() > 0;
  if (ok) {
    const std::size_t d = a.rows() / 2;
    ok = exact(mf) ? is_symplectic(mf.exact, d, 0.0)
                   : is_symplectic(a, d, float_tol(a, o.tol < 0 ? 1e-10 : o.tol));
  }
  out << "symplectic: " << (ok ? "true" : "false") << "\n";
  if (ok && a.rows() % 4 == 0) {
    const bool si = exact(mf) ? is_invertible(submatrices(mf.exact).E)
                              : is_invertible(submatrices(a).E);
    out << "shift-invertible: " << (si ? "true" : "false") << "\n";
  }
  return ok ? 0 : 1;
}

template <class T>
void write_blocks(const Matrix<T>& a, const fs::path& dir, std::ostream& out) {
  const Submatrices<T> s = submatrices(a);
  write_matrix_as(dir / "E.json", s.E, out);
  write_matrix_as(dir / "F.json", s.F, out);
  write_matrix_as(dir / "Ecal.json", s.Ecal, out);
  write_matrix_as(dir / "Fcal.json", s.Fcal, out);
  write_matrix_as(dir / "M.json", compute_MA(a), out);
  if (is_invertible(s.E)) {
    const Matrix<T> g = make_L<T>(a.rows() / 4) * inverse(s.E) * s.Ecal;
    write_matrix_as(dir / "G.json", g, out);
    write_matrix_as(dir / "deformation.json", Matrix<T>(make_J<T>(g.rows() / 2) * conj_blocks(g)),
                    out);
  }
}

int cmd_blocks(const Options& o, std::ostream& out) {
  const io::MatrixFile mf = load_matrix(o.matrix, o.dim);
  require_square_even(mf.value, 4, "blocks");
  fs::create_directories(o.out_dir);
  if (exact(mf))
    write_blocks(mf.exact, o.out_dir, out);
  else
    write_blocks(mf.value, o.out_dir, out);
  return 0;
}

int cmd_factorize(const Options& o, std::ostream& out) {
  const io::MatrixFile mf = load_matrix(o.matrix, o.dim);
  require_square_even(mf.value, 4, "factorize");
  fs::create_directories(o.out_dir);
  const fs::path dir = o.out_dir;
  if (exact(mf)) {
    const CGTriple<Rational> t = factorize(mf.exact, 0.0);
    write_matrix_as(dir / "E.json", t.E, out);
    write_matrix_as(dir / "C.json", t.C, out);
    write_matrix_as(dir / "S.json", t.S, out);
  } else {
    const CGTriple<double> t = factorize(mf.value, o.tol < 0 ? 1e-10 : o.tol);
    write_matrix_as(dir / "E.json", t.E, out);
    write_matrix_as(dir / "C.json", t.C, out);
    write_matrix_as(dir / "S.json", t.S, out);
  }
  return 0;
}

int cmd_alpha(const Options& o, std::ostream& out) {
  const io::MatrixFile e = io::read_matrix(o.e_file);
  const io::MatrixFile c = io::read_matrix(o.c_file);
  const io::MatrixFile s = io::read_matrix(o.s_file);
  if (exact(e) && exact(c) && exact(s))
    write_matrix_as(o.out, alpha(CGTriple<Rational>{e.exact, c.exact, s.exact}, 0.0), out);
  else
    write_matrix_as(o.out, alpha(CGTriple<double>{e.value, c.value, s.value}, 1e-10), out);
  return 0;
}

int cmd_decompose(const Options& o, std::ostream& out) {
  const io::MatrixFile mf = load_matrix(o.matrix, o.dim);
  require_square_even(mf.value, 2, "decompose");
  DecomposeOptions opts;
  opts.executable = o.executable;
  if (o.tol > 0) opts.tol = o.tol;
  const GeneratorWord w = decompose_generators(mf.value, opts);
  const double err = max_abs_diff(word_product(w), mf.value);
  out << "word: " << describe(w) << "\n";
  out << "factors: " << w.factors.size() << "\n";
  out << "reconstruction error: " << fmt(err) << "\n";
  if (!o.out.empty()) {
    json j;
    j["d"] = w.d;
    j["factors"] = json::array();
    for (const Factor& f : w.factors) {
      json item;
      item["kind"] = factor_name(f);
      if (!std::holds_alternative<FourierFactor>(f))
        item["matrix"] = json::parse(io::matrix_json(factor_matrix(f, w.d)));
      j["factors"].push_back(item);
    }
    j["reconstruction_error"] = err;
    io::write_text(o.out, j.dump(2) + "\n");
    out << "wrote " << o.out << "\n";
  }
  return 0;
}

int cmd_named(const Options& o, std::ostream& out) {
  const auto kind = parse_named_kind(o.named_kind);
  if (!kind) throw IoError("unknown matrix name '" + o.named_kind + "'");
  NamedSpec<Rational> spec;
  spec.kind = *kind;
  spec.d = o.dim;
  if (!o.tau.empty()) spec.tau = parse_rational(o.tau);
  if (!o.param.empty()) {
    const io::MatrixFile p = io::read_matrix(o.param);
    if (!exact(p)) throw IoError("--param must be a rational matrix");
    spec.param = p.exact;
  } else if (*kind == NamedKind::D_E || *kind == NamedKind::V_C || *kind == NamedKind::V_C_T ||
             *kind == NamedKind::Lift) {
    throw IoError(o.named_kind + " needs --param");
  }
  write_matrix_as(o.out, make_named(spec), out);
  return 0;
}

int cmd_wdist(const Options& o, std::ostream& out) {
  const DiscreteSignal f = io::read_signal(o.signal);
  const DiscreteSignal g = io::read_signal(o.window);
  const io::MatrixFile mf = load_matrix(o.matrix, static_cast<std::size_t>(f.spec().dim()));
  const TFGrid w = wigner(mf.value, f, g, route_of(o));
  io::write_tfgrid(o.out, w);
  out << "wrote " << o.out << " (" << w.provenance << ", N = " << w.spec.n() << ")\n";
  if (!o.csv.empty()) {
    io::write_tfgrid_csv(o.csv, w);
    out << "wrote " << o.csv << "\n";
  }
  return 0;
}

int cmd_norm(const Options& o, std::ostream& out) {
  const MixedNormParams params = norm_params(o);
  double value = 0.0;
  if (o.sub == "mixed") {
    value = mixed_norm(io::read_tfgrid(o.in), params);
  } else {
    value = modulation_norm(io::read_signal(o.signal), io::read_signal(o.window), params);
  }
  out << fmt(value) << "\n";
  return 0;
}

DiscreteSignal signal_or_random(const std::string& path, const GridSpec& spec, std::uint64_t seed) {
  if (!path.empty()) return io::read_signal(path);
  return random_test_signal(spec, seed, 0.0);
}

int finish_report(const Options& o, const json& report, std::ostream& out) {
  const bool pass = report.at("pass").get<bool>();
  if (!o.report.empty()) {
    io::write_text(o.report, report.dump(2) + "\n");
    out << (pass ? "PASS" : "FAIL") << " " << report.at("theorem").get<std::string>() << " -> "
        << o.report << "\n";
  } else {
    out << report.dump(2) << "\n";
  }
  return pass ? 0 : 1;
}

json base_report(const std::string& theorem, const std::string& hypothesis) {
  json j;
  j["theorem"] = theorem;
  j["hypothesis"] = hypothesis;
  j["trials"] = 1;
  j["min_ratio"] = nullptr;
  j["max_ratio"] = nullptr;
  j["slope"] = nullptr;
  return j;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const std::string& what = o.sub;
  const int n = o.n > 0 ? o.n : 32;
  if (what == "counterexample") {
    CounterexampleOptions opts;
    if (o.n > 0) opts.n = o.n;
    if (o.tol > 0) opts.tolerance = o.tol;
    const RatioReport r = counterexample_DJ(parse_exponent(o.p), parse_exponent(o.q), opts);
    return finish_report(o, json::parse(io::report_json(r)), out);
  }
  if (what == "dilation") {
    const io::MatrixFile mf = load_matrix(o.matrix, o.dim);
    DilationOptions opts;
    opts.n = o.n;
    opts.seed = o.seed;
    if (o.trials > 0) opts.trials = o.trials;
    if (o.tol > 0) opts.tolerance = o.tol;
    const RatioReport r = dilation_norm_ratio(mf.value, norm_params(o), opts);
    return finish_report(o, json::parse(io::report_json(r)), out);
  }

  const io::MatrixFile mf = load_matrix(o.matrix, o.dim);
  const Mat& a = mf.value;
  require_square_even(a, 4, what);
  const std::size_t d = a.rows() / 4;
  const GridSpec spec(static_cast<int>(d), n);
  const WignerRoute route = route_of(o);

  if (what == "equivalence") {
    EquivalenceOptions opts;
    opts.seed = o.seed;
    opts.bound = o.bound;
    opts.noise = o.noise;
    opts.route = route;
    if (o.trials > 0) opts.trials = o.trials;
    const DiscreteSignal g = o.window.empty() ? standard_gaussian(spec) : io::read_signal(o.window);
    const RatioReport r = equivalence_check(a, g, norm_params(o), opts);
    return finish_report(o, json::parse(io::report_json(r)), out);
  }

  const DiscreteSignal f = signal_or_random(o.f1, spec, o.seed);
  const GridSpec& grid = f.spec();
  if (what == "moyal") {
    const DiscreteSignal f2 = signal_or_random(o.f2, grid, o.seed + 1);
    const DiscreteSignal g1 = signal_or_random(o.g1, grid, o.seed + 2);
    const DiscreteSignal g2 = signal_or_random(o.g2, grid, o.seed + 3);
    const double tol = o.tol > 0 ? o.tol : 1e-3;
    const MoyalResult m = moyal_check(a, f, f2, g1, g2, route);
    json j = base_report("Moyal identity", "route " + to_string(route) + ", N = " +
                                               std::to_string(grid.n()));
    if (std::abs(m.rhs) > 0.0) j["min_ratio"] = j["max_ratio"] = std::abs(m.lhs) / std::abs(m.rhs);
    j["lhs"] = {m.lhs.real(), m.lhs.imag()};
    j["rhs"] = {m.rhs.real(), m.rhs.imag()};
    j["error"] = m.error;
    j["tolerance"] = tol;
    j["pass"] = m.error <= tol;
    return finish_report(o, j, out);
  }

  const DiscreteSignal g = o.window.empty() ? standard_gaussian(grid) : io::read_signal(o.window);
  if (what == "covariance") {
    const CovarianceForm form = o.form == "phase" ? CovarianceForm::phase : CovarianceForm::modulus;
    if (o.form != "phase" && o.form != "modulus")
      throw InvalidArgumentError("--form must be 'modulus' or 'phase'");
    std::vector<int> steps;
    if (!o.steps.empty()) {
      steps = parse_steps(o.steps);
      if (steps.size() != 2 * d)
        throw InvalidArgumentError("--steps needs " + std::to_string(2 * d) + " integers");
    } else {
      const Submatrices<double> s = submatrices(a);
      for (int m = 1; m <= 16 && steps.empty(); ++m) {
        bool integral = true;
        for (std::size_t i = 0; i < 2 * d; ++i) {
          double ek = 0.0;
          double fk = 0.0;
          for (std::size_t k = 0; k < 2 * d; ++k) {
            ek += s.E(i, k) * m;
            fk += s.F(i, k) * m;
          }
          integral = integral && std::abs(ek - std::round(ek)) < 1e-9 &&
                     std::abs(fk - std::round(fk)) < 1e-9;
        }
        if (integral) steps.assign(2 * d, m);
      }
      if (steps.empty()) throw InvalidArgumentError("no small on-grid shift found; pass --steps");
    }
    std::vector<double> w(steps.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = steps[i] * grid.spacing();
    const double tol = o.tol > 0 ? o.tol : 1e-3;
    const double dev = covariance_check(a, w, f, g, form, route);
    std::string shift;
    for (int s : steps) shift += (shift.empty() ? "" : ",") + std::to_string(s);
    json j = base_report("covariance under time-frequency shifts",
                         o.form + " form, steps (" + shift + "), route " + to_string(route));
    j["error"] = dev;
    j["tolerance"] = tol;
    j["pass"] = dev <= tol;
    return finish_report(o, j, out);
  }
  if (what == "reproducing") {
    const DiscreteSignal gamma = o.gamma.empty()
                                     ? gaussian(grid, GaussianAtom{std::vector<double>(d, 0.3),
                                                                   std::vector<double>(d, 0.1), 1.3})
                                     : io::read_signal(o.gamma);
    const double tol = o.tol > 0 ? o.tol : 1e-2;
    const double err = reproducing_check(a, f, g, gamma, route);
    json j = base_report("reproducing formula", "route " + to_string(route) + ", N = " +
                                                    std::to_string(grid.n()));
    j["error"] = err;
    j["tolerance"] = tol;
    j["pass"] = err <= tol;
    return finish_report(o, j, out);
  }
  throw InvalidArgumentError("unknown verification '" + what + "'");
}

int cmd_plot(const Options& o, std::ostream& out) {
  io::write_pgm(o.out, io::read_tfgrid(o.in), o.range_db);
  out << "wrote " << o.out << "\n";
  return 0;
}

int dispatch(const Options& o, std::ostream& out) {
  if (o.command == "symplectic") {
    if (o.sub == "check") return cmd_check(o, out);
    if (o.sub == "blocks") return cmd_blocks(o, out);
    if (o.sub == "factorize") return cmd_factorize(o, out);
    if (o.sub == "alpha") return cmd_alpha(o, out);
    if (o.sub == "decompose") return cmd_decompose(o, out);
    if (o.sub == "named") return cmd_named(o, out);
  }
  if (o.command == "wdist") return cmd_wdist(o, out);
  if (o.command == "norm") return cmd_norm(o, out);
  if (o.command == "verify") return cmd_verify(o, out);
  if (o.command == "plot") return cmd_plot(o, out);
  throw InvalidArgumentError("no command given");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Metaplectic Wigner distributions: matrices, distributions, norms and checks", "mpw"};
  app.set_config("--config", "", "Read options from a TOML or INI file");
  app.require_subcommand(1);

  auto matrix_arg = [&](CLI::App* c) {
    c->add_option("matrix", o.matrix, "Matrix JSON file, or @NAME / @A_tau:TAU")->required();
    c->add_option("--dim", o.dim, "Level d for @NAME matrices")->check(CLI::PositiveNumber);
  };
  auto tol_arg = [&](CLI::App* c) { c->add_option("--tol", o.tol, "Tolerance"); };

  CLI::App* sym = app.add_subcommand("symplectic", "Matrix analysis");
  sym->require_subcommand(1);
  {
    CLI::App* c = sym->add_subcommand("check", "Test A^T J A == J");
    matrix_arg(c);
    tol_arg(c);
    c = sym->add_subcommand("blocks", "Write E, F, Ecal, Fcal, M (and G) blocks");
    matrix_arg(c);
    c->add_option("--out-dir", o.out_dir, "Output directory");
    c = sym->add_subcommand("factorize", "Write E.json, C.json, S.json with alpha(E, C, S) == A");
    matrix_arg(c);
    tol_arg(c);
    c->add_option("--out-dir", o.out_dir, "Output directory");
    c = sym->add_subcommand("alpha", "Build A from (E, C, S)");
    c->add_option("--E", o.e_file)->required();
    c->add_option("--C", o.c_file)->required();
    c->add_option("--S", o.s_file)->required();
    c->add_option("--out", o.out)->required();
    c = sym->add_subcommand("decompose", "Factor into J, D_E and V_C generators");
    matrix_arg(c);
    tol_arg(c);
    c->add_flag("--executable", o.executable, "Plan that runs on a grid");
    c->add_option("--out", o.out, "Write the word as JSON");
    c = sym->add_subcommand("named", "Write a built-in matrix");
    c->add_option("kind", o.named_kind, "J, L, K, A_ST, A_tau, A_FT2, D_E, V_C, V_C_T or Lift")
        ->required();
    c->add_option("--dim", o.dim)->check(CLI::PositiveNumber);
    c->add_option("--tau", o.tau, "tau for A_tau, e.g. 1/2");
    c->add_option("--param", o.param, "Parameter matrix for D_E, V_C, V_C_T, Lift");
    c->add_option("--out", o.out)->required();
  }

  CLI::App* wd = app.add_subcommand("wdist", "Compute W_A(f, g)");
  wd->add_option("--matrix", o.matrix)->required();
  wd->add_option("--signal", o.signal)->required();
  wd->add_option("--window", o.window)->required();
  wd->add_option("--out", o.out)->required();
  wd->add_option("--csv", o.csv, "Also write CSV");
  wd->add_flag("--normal-form", o.normal_form, "Use the deformed-STFT normal form");
  wd->add_option("--route", o.route, "auto, direct, pipeline or normal-form");

  CLI::App* nm = app.add_subcommand("norm", "Mixed and modulation norms");
  nm->require_subcommand(1);
  for (const char* name : {"mixed", "modulation"}) {
    CLI::App* c = nm->add_subcommand(name, name == std::string("mixed") ? "L^{p,q}_m norm of a TFGrid"
                                                                      : "M^{p,q}_m norm of a signal");
    if (name == std::string("mixed")) {
      c->add_option("--in", o.in)->required();
    } else {
      c->add_option("--signal", o.signal)->required();
      c->add_option("--window", o.window)->required();
    }
    c->add_option("--p", o.p);
    c->add_option("--q", o.q);
    c->add_option("--weight", o.weight, "1 or vs:SLOPE");
    c->add_flag("--counting", o.counting, "Counting measure instead of Riemann sums");
  }

  CLI::App* vf = app.add_subcommand("verify", "Numerical checks with JSON reports");
  vf->require_subcommand(1);
  for (const char* name : {"moyal", "covariance", "reproducing", "dilation", "equivalence",
                           "counterexample"}) {
    const std::string s(name);
    CLI::App* c = vf->add_subcommand(name);
    c->add_option("--report", o.report, "Write the JSON report here");
    c->add_option("--seed", o.seed);
    c->add_option("--n", o.n, "Grid points per axis")->check(CLI::PositiveNumber);
    tol_arg(c);
    if (s != "counterexample") {
      c->add_option("--matrix", o.matrix, "Matrix JSON file, or @NAME / @A_tau:TAU")->required();
      c->add_option("--dim", o.dim)->check(CLI::PositiveNumber);
    }
    if (s == "moyal" || s == "covariance" || s == "reproducing" || s == "equivalence")
      c->add_option("--route", o.route);
    if (s == "moyal") {
      c->add_option("--f1", o.f1);
      c->add_option("--f2", o.f2);
      c->add_option("--g1", o.g1);
      c->add_option("--g2", o.g2);
    }
    if (s == "covariance" || s == "reproducing") {
      c->add_option("--signal", o.f1);
      c->add_option("--window", o.window);
    }
    if (s == "covariance") {
      c->add_option("--steps", o.steps, "Shift in grid steps, e.g. 2,2");
      c->add_option("--form", o.form, "modulus or phase");
    }
    if (s == "reproducing") c->add_option("--gamma", o.gamma);
    if (s == "dilation" || s == "equivalence" || s == "counterexample") {
      c->add_option("--p", o.p);
      c->add_option("--q", o.q);
    }
    if (s == "dilation" || s == "equivalence") {
      c->add_option("--weight", o.weight, "1 or vs:SLOPE");
      c->add_option("--trials", o.trials);
    }
    if (s == "equivalence") {
      c->add_option("--window", o.window);
      c->add_option("--bound", o.bound, "Allowed max/min spread");
      c->add_option("--noise", o.noise);
    }
  }

  CLI::App* pl = app.add_subcommand("plot", "Log-magnitude PGM image of a TFGrid");
  pl->add_option("--in", o.in)->required();
  pl->add_option("--out", o.out)->required();
  pl->add_option("--range-db", o.range_db);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  for (CLI::App* top : app.get_subcommands()) {
    o.command = top->get_name();
    for (CLI::App* s : top->get_subcommands()) o.sub = s->get_name();
  }

  try {
    return dispatch(o, out);
  } catch (const NotSymplecticError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NotShiftInvertibleError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace metaplectic

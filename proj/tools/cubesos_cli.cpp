#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cubesos/config.hpp"
#include "cubesos/errors.hpp"
#include "cubesos/gamma.hpp"
#include "cubesos/inner.hpp"
#include "cubesos/instances.hpp"
#include "cubesos/io.hpp"
#include "cubesos/kernel.hpp"
#include "cubesos/krawtchouk.hpp"
#include "cubesos/outer.hpp"
#include "cubesos/qary.hpp"

using namespace cubesos;

namespace {

enum Exit { kOk = 0, kParse = 2, kSolver = 3, kNoCert = 4 };

struct SolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  int threads = -1;
  int max_n = -1;
  bool quiet = false;
  double solver_tol = -1.0;
  int solver_max_iter = -1;
};

double env_double(const char* name, double fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    return std::stod(v);
  } catch (const std::exception&) {
    throw ParseError(std::string("bad value in ") + name);
  }
}

OuterOptions outer_options(const Globals& g) {
  OuterOptions o;
  o.sdp.gap_tol = g.solver_tol > 0 ? g.solver_tol : env_double("CUBESOS_SOLVER_TOL", o.sdp.gap_tol);
  o.sdp.max_iter = g.solver_max_iter > 0
                       ? g.solver_max_iter
                       : static_cast<int>(env_double("CUBESOS_SOLVER_MAX_ITER", o.sdp.max_iter));
  return o;
}

void apply_globals(const Globals& g) {
  if (g.threads >= 0) config().threads = g.threads;
  if (g.max_n > 0) config().max_n = g.max_n;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

int to_int(const std::string& s) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw ParseError("not an integer: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("not an integer: " + s);
  }
}

// kind:args, e.g. random:10,2,7 | complete:5 | hamming:6 | maxcut:g.json | stable:g.json
CubePolynomial instance_from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError("instance spec needs kind:args");
  const std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
  if (kind == "random") {
    const auto p = split(arg, ',');
    if (p.size() != 3) throw ParseError("random:n,d,seed");
    return random_poly(to_int(p[0]), to_int(p[1]), static_cast<std::uint64_t>(std::stoull(p[2])));
  }
  if (kind == "complete") return maxcut_complete(to_int(arg));
  if (kind == "hamming") return hamming_weight(to_int(arg));
  if (kind == "maxcut") return maxcut_instance(weight_matrix(graph_from_json(read_json_file(arg))));
  if (kind == "stable") {
    const GraphInstance g = graph_from_json(read_json_file(arg));
    return stable_set_instance(g.edges, g.n);
  }
  throw ParseError("unknown instance kind: " + kind);
}

CubePolynomial load_poly(const std::string& path, const std::string& spec) {
  if (!path.empty() && !spec.empty()) throw ParseError("give either --poly or --instance");
  if (!path.empty()) return cube_poly_from_json(read_json_file(path));
  if (!spec.empty()) return instance_from_spec(spec);
  throw ParseError("one of --poly or --instance is required");
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

template <class F>
double timed(F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- bounds ----

struct BoundsArgs {
  std::string poly, instance, matrix, which = "all", out;
  int r = 1;
};

int cmd_bounds(const BoundsArgs& a, const Globals& g) {
  const bool want_inner = a.which == "inner" || a.which == "all";
  const bool want_outer = a.which == "outer" || a.which == "all";
  const bool want_brute = a.which == "brute" || a.which == "all";
  const OuterOptions oo = outer_options(g);

  Json rep;
  Json timings = Json::object();
  bool solver_ok = true;
  double inner = NAN, outer = NAN, fmin = NAN;

  if (!a.matrix.empty()) {
    if (!a.poly.empty() || !a.instance.empty()) throw ParseError("--matrix excludes --poly and --instance");
    const MatrixPolynomial F = matrix_poly_from_json(read_json_file(a.matrix));
    rep["n"] = F.n();
    rep["k"] = F.k();
    if (want_inner) timings["inner"] = timed([&] { inner = inner_matrix(F, a.r).value; });
    if (want_outer) {
      OuterBoundResult ob;
      timings["outer"] = timed([&] { ob = outer_matrix(F, a.r, oo); });
      outer = ob.value;
      solver_ok = ob.status == SdpStatus::optimal;
      rep["outer"] = {{"value", ob.value}, {"moment_value", ob.moment_value}, {"status", to_string(ob.status)},
                      {"gap", ob.gap}, {"iterations", ob.iterations}};
    }
    if (want_brute) {
      MinResult mr;
      timings["brute"] = timed([&] { mr = brute_force_min(F); });
      fmin = mr.value;
      rep["brute"] = {{"value", mr.value}, {"argmin", to_bitstring(mr.argmin, F.n())}};
    }
  } else {
    const CubePolynomial f = load_poly(a.poly, a.instance);
    rep["n"] = f.n();
    rep["degree"] = f.degree();
    if (want_inner) timings["inner"] = timed([&] { inner = inner_cube(f, a.r).value; });
    if (want_outer) {
      OuterBoundResult ob;
      timings["outer"] = timed([&] { ob = outer_cube(f, a.r, oo); });
      outer = ob.value;
      solver_ok = ob.status == SdpStatus::optimal;
      rep["outer"] = {{"value", ob.value}, {"moment_value", ob.moment_value}, {"status", to_string(ob.status)},
                      {"gap", ob.gap}, {"iterations", ob.iterations}};
    }
    if (want_brute) {
      MinResult mr;
      timings["brute"] = timed([&] { mr = brute_force_min(f); });
      fmin = mr.value;
      rep["brute"] = {{"value", mr.value}, {"argmin", to_bitstring(mr.argmin, f.n())}};
    }
  }
  rep["r"] = a.r;
  if (want_inner) rep["inner"] = {{"value", inner}};
  Json sandwich = Json::object();
  if (want_outer && want_brute) sandwich["outer_le_min"] = outer <= fmin + 1e-6;
  if (want_inner && want_brute) sandwich["min_le_inner"] = fmin <= inner + 1e-8;
  if (want_inner && want_outer) sandwich["outer_le_inner"] = outer <= inner + 1e-6;
  rep["sandwich"] = sandwich;
  rep["timings_s"] = timings;
  rep["timestamp"] = utc_now();
  emit(a.out, rep.dump(2) + "\n");

  if (!g.quiet) {
    std::cerr << "r = " << a.r;
    if (want_outer) std::cerr << "  outer = " << format_double(outer);
    if (want_brute) std::cerr << "  min = " << format_double(fmin);
    if (want_inner) std::cerr << "  inner = " << format_double(inner);
    std::cerr << "\n";
  }
  if (!solver_ok) throw SolverFailure("outer SDP did not reach optimality");
  return kOk;
}

// ---- certify ----

struct CertifyArgs {
  std::string poly, instance, out;
  int r = 1;
  bool verify = false;
};

int cmd_certify(const CertifyArgs& a, const Globals& g) {
  const CubePolynomial f = load_poly(a.poly, a.instance);
  const SosCubeCertificate cert = certify(f, a.r);
  const std::string text = to_json(cert).dump(2) + "\n";
  emit(a.out, text);
  if (!g.quiet)
    std::cerr << "delta = " << format_double(cert.delta) << "  lambda_tilde = " << format_double(cert.lambda_tilde)
              << "  a-priori bound = " << format_double(cert.closed_form)
              << (cert.closed_form_applicable ? "" : " (not applicable)") << "\n";
  if (a.verify) {
    const SosCubeCertificate back = certificate_from_json(Json::parse(text));
    const double res = verify_certificate(back, f);
    std::cerr << "verify residual = " << format_double(res) << "\n";
    if (!(res <= 1e-7 * std::max(1.0, cert.scale))) throw SolverFailure("certificate failed verification");
  }
  return kOk;
}

// ---- sweep ----

struct SweepArgs {
  std::string mode, out, n = "", q = "2", r_frac = "0.1,0.2,0.3,0.4,0.5";
  int points = 200, d = 2, samples = 10;
  unsigned long long seed = 1;
  bool no_outer = false;
};

std::vector<int> int_list(const std::string& s) {
  std::vector<int> v;
  for (const auto& x : split(s, ','))
    if (!x.empty()) v.push_back(to_int(x));
  return v;
}

std::vector<double> double_list(const std::string& s) {
  std::vector<double> v;
  for (const auto& x : split(s, ','))
    if (!x.empty()) {
      try {
        v.push_back(std::stod(x));
      } catch (const std::logic_error&) {
        throw ParseError("not a number: " + x);
      }
    }
  return v;
}

int cmd_sweep(const SweepArgs& a, const Globals& g) {
  std::ostringstream os;
  CsvWriter csv(os);
  const auto qs = int_list(a.q);
  const auto ns = int_list(a.n);
  if (a.mode == "roots") {
    if (ns.empty()) throw ParseError("--n is required for roots");
    csv.header({"n", "q", "r", "xi", "xi_over_n", "phi_q(r/n)"});
    for (int q : qs)
      for (int n : ns) {
        const int rmax = n * (q - 1) / q;
        for (int r = 1; r <= rmax; ++r) {
          const double xi = least_root(n, q, r);
          const double t = static_cast<double>(r) / n;
          csv.cell(n).cell(q).cell(r).cell(xi).cell(xi / n);
          csv.cell(levenshtein_phi(std::min(t, (q - 1.0) / q), q));
          csv.end_row();
        }
      }
  } else if (a.mode == "phi") {
    if (a.points < 2) throw ParseError("--points must be at least 2");
    csv.header({"q", "n", "r", "t", "xi_over_n", "phi_q"});
    for (int q : qs) {
      std::vector<double> grid(a.points);
      for (int i = 0; i < a.points; ++i) grid[i] = (q - 1.0) / q * i / (a.points - 1);
      for (const PhiRow& row : phi_q_sweep({q}, ns, grid))
        csv.cell(row.q).cell(row.n).cell(row.r).cell(row.t).cell(row.xi_over_n).cell(row.phi).end_row();
    }
  } else if (a.mode == "errors") {
    if (ns.empty()) throw ParseError("--n is required for errors");
    ErrorSweepOptions o;
    o.d = a.d;
    o.n_list = ns;
    o.r_fractions = double_list(a.r_frac);
    o.samples = a.samples;
    o.seed = a.seed;
    o.outer = !a.no_outer;
    o.outer_options = outer_options(g);
    csv.header({"n", "r", "t", "max_outer_gap", "max_inner_gap", "bound_2Cd_xi_over_n", "phi(t)", "status"});
    for (const ErrorSweepRow& row : error_sweep(o)) {
      csv.cell(row.n).cell(row.r).cell(row.t);
      if (o.outer) {
        csv.cell(row.max_outer_gap);
      } else {
        csv.cell(std::string("nan"));
      }
      csv.cell(row.max_inner_gap).cell(row.bound).cell(row.phi).cell(row.status).end_row();
    }
  } else {
    throw ParseError("unknown sweep mode: " + a.mode);
  }
  emit(a.out, os.str());
  return kOk;
}

// ---- gamma ----

struct GammaArgs {
  int dmax = 10, n_sweep = 0, q = 2;
  std::string out;
};

int cmd_gamma(const GammaArgs& a, const Globals& g) {
  if (a.dmax < 0) throw ParseError("--dmax must be nonnegative");
  if (a.q < 2) throw ParseError("--q must be at least 2");
  std::vector<double> gam(a.dmax + 1, 0.0);
  for (int d = 1; d <= a.dmax; ++d) gam[d] = a.q == 2 ? gamma_d(d) : gamma_qary(d, a.q);
  const bool exact = a.q == 2 && a.dmax <= 30;
  std::ostringstream table;
  CsvWriter t(table);
  t.header({"d", "gamma_d", "C_d"});
  for (int d = 1; d <= a.dmax; ++d) {
    t.cell(d);
    if (exact) {
      const std::int64_t gd = gamma_d_int(d);
      t.cell(static_cast<long long>(gd)).cell(static_cast<long long>(d) * (d + 1) * gd);
    } else {
      t.cell(gam[d]).cell(d * (d + 1.0) * gam[d]);
    }
    t.end_row();
  }
  std::cout << table.str();

  if (a.n_sweep > 0) {
    std::ostringstream os;
    CsvWriter csv(os);
    csv.header({"d", "k", "n", "rho_finite", "rho_infinity", "gamma_d", "C_d"});
    for (int d = 1; d <= a.dmax; ++d) {
      const GammaTable tab = gamma_table(d, a.n_sweep, a.q);
      for (const auto& [nk, val] : tab.rho_finite)
        csv.cell(d).cell(nk.second).cell(nk.first).cell(val).cell(tab.rho_infinity[nk.second]).cell(tab.gamma_d).cell(tab.C_d).end_row();
    }
    if (a.out.empty()) {
      std::cout << os.str();
    } else {
      write_text_file(a.out, os.str());
    }
  }
  if (!g.quiet) {
    std::cerr << "  d  gamma_d" << (a.q == 2 ? "" : " (empirical q-ary)") << "\n";
    for (int d = 1; d <= a.dmax; ++d)
      std::cerr << "  " << d << "  " << (exact ? std::to_string(gamma_d_int(d)) : format_double(gam[d])) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sum-of-squares hierarchies on the boolean cube"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
  app.add_option("--max-n", g.max_n, "Enumeration cap on n");
  app.add_flag("--quiet", g.quiet, "Suppress human-readable output on stderr");
  app.add_option("--solver-tol", g.solver_tol, "SDP relative gap tolerance");
  app.add_option("--solver-max-iter", g.solver_max_iter, "SDP iteration limit");

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Inner, outer and exact bounds for one polynomial");
  bounds->add_option("--poly", ba.poly, "Polynomial JSON file");
  bounds->add_option("--instance", ba.instance, "random:n,d,seed | complete:n | hamming:n | maxcut:FILE | stable:FILE");
  bounds->add_option("--matrix", ba.matrix, "Matrix polynomial JSON file");
  bounds->add_option("--r", ba.r, "Order")->required();
  bounds->add_option("--which", ba.which)->check(CLI::IsMember({"inner", "outer", "brute", "all"}));
  bounds->add_option("--out", ba.out, "Output file (default stdout)");

  CertifyArgs ca;
  auto* cert = app.add_subcommand("certify", "Emit a kernel SOS certificate");
  cert->add_option("--poly", ca.poly, "Polynomial JSON file");
  cert->add_option("--instance", ca.instance, "Instance spec, as for bounds");
  cert->add_option("--r", ca.r, "Order")->required();
  cert->add_option("--out", ca.out, "Certificate file (default stdout)");
  cert->add_flag("--verify", ca.verify, "Re-check the written certificate on every point");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "CSV sweeps");
  sweep->add_option("--mode", sa.mode)->required()->check(CLI::IsMember({"roots", "phi", "errors"}));
  sweep->add_option("--n", sa.n, "Comma-separated n values");
  sweep->add_option("--q", sa.q, "Comma-separated q values");
  sweep->add_option("--points", sa.points, "Grid points per phi curve");
  sweep->add_option("--d", sa.d, "Degree for error sweeps");
  sweep->add_option("--r-frac", sa.r_frac, "Comma-separated r/n values for error sweeps");
  sweep->add_option("--samples", sa.samples, "Instances per row");
  sweep->add_option("--seed", sa.seed, "Base seed");
  sweep->add_flag("--no-outer", sa.no_outer, "Skip the outer SDP in error sweeps");
  sweep->add_option("--out", sa.out, "Output file (default stdout)");

  GammaArgs ga;
  auto* gamma = app.add_subcommand("gamma", "Tabulate gamma_d and C_d");
  gamma->add_option("--dmax", ga.dmax, "Largest degree");
  gamma->add_option("--n-sweep", ga.n_sweep, "Also tabulate rho(n, d, k) for n up to this value");
  gamma->add_option("--q", ga.q, "Alphabet size");
  gamma->add_option("--out", ga.out, "File for the rho CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    apply_globals(g);
    if (*bounds) return cmd_bounds(ba, g);
    if (*cert) return cmd_certify(ca, g);
    if (*sweep) return cmd_sweep(sa, g);
    if (*gamma) return cmd_gamma(ga, g);
  } catch (const NoCertificate& e) {
    std::cerr << "error: " << e.what() << " (lambda_tilde = " << format_double(e.lambda_tilde) << " >= 1)\n";
    return kNoCert;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const DimensionError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kParse;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kParse;
  } catch (const CapExceeded& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolver;
  }
  return kOk;
}

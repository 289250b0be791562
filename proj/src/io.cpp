#include "cubesos/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cubesos/errors.hpp"

namespace cubesos {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad field \"") + key + "\": " + e.what());
  }
}

int checked_n(const Json& j) {
  const int n = field<int>(j, "n");
  if (n < 0 || n > 63) throw ParseError("n out of range");
  return n;
}

Mask bitstring_field(const Json& j, const char* key, int n) {
  const auto s = field<std::string>(j, key);
  if (static_cast<int>(s.size()) != n) throw ParseError(std::string("bitstring \"") + key + "\" has wrong length");
  try {
    return from_bitstring(s);
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

Json to_json(const CubePolynomial& p) {
  Json terms = Json::array();
  for (const auto& [s, c] : p.terms()) {
    Json vars = Json::array();
    for (int i = 0; i < p.n(); ++i)
      if ((s >> i) & 1) vars.push_back(i + 1);
    terms.push_back({{"vars", vars}, {"coef", c}});
  }
  return {{"n", p.n()}, {"terms", terms}};
}

Json to_json(const FourierPolynomial& p) {
  Json terms = Json::array();
  for (const auto& [a, c] : p.coeffs()) terms.push_back({{"a", to_bitstring(a, p.n())}, {"coef", c}});
  return {{"n", p.n()}, {"fourier", terms}};
}

CubePolynomial cube_poly_from_json(const Json& j) {
  const int n = checked_n(j);
  if (j.contains("fourier")) {
    FourierPolynomial f(n);
    for (const auto& t : field<Json>(j, "fourier")) f.add(bitstring_field(t, "a", n), field<double>(t, "coef"));
    return inverse_fourier(f);
  }
  CubePolynomial p(n);
  for (const auto& t : field<Json>(j, "terms")) {
    const auto vars = field<std::vector<int>>(t, "vars");
    for (int v : vars)
      if (v < 1 || v > n) throw ParseError("variable index out of range");
    p.add_monomial(vars, field<double>(t, "coef"));
  }
  return p;
}

Json to_json(const MatrixPolynomial& F) {
  Json entries = Json::array();
  for (int i = 0; i < F.k(); ++i)
    for (int j = i; j < F.k(); ++j)
      if (!F(i, j).is_zero()) entries.push_back({{"i", i}, {"j", j}, {"poly", to_json(F(i, j))}});
  return {{"n", F.n()}, {"k", F.k()}, {"entries", entries}};
}

MatrixPolynomial matrix_poly_from_json(const Json& j) {
  const int n = checked_n(j);
  const int k = field<int>(j, "k");
  if (k < 1) throw ParseError("k must be positive");
  MatrixPolynomial F(n, k);
  for (const auto& e : field<Json>(j, "entries")) {
    const int a = field<int>(e, "i"), b = field<int>(e, "j");
    if (a < 0 || b < 0 || a >= k || b >= k) throw ParseError("matrix entry index out of range");
    Json poly = field<Json>(e, "poly");
    if (!poly.contains("n")) poly["n"] = n;
    CubePolynomial p = cube_poly_from_json(poly);
    if (p.n() != n) throw ParseError("matrix entry has wrong n");
    F.set(a, b, p);
  }
  return F;
}

Json to_json(const QaryPolynomial& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exps", e}, {"coef", c}});
  return {{"n", p.n()}, {"q", p.q()}, {"terms", terms}};
}

QaryPolynomial qary_poly_from_json(const Json& j) {
  const int n = checked_n(j);
  const int q = field<int>(j, "q");
  if (q < 2) throw ParseError("q must be at least 2");
  QaryPolynomial p(n, q);
  for (const auto& t : field<Json>(j, "terms")) {
    const auto e = field<std::vector<int>>(t, "exps");
    if (static_cast<int>(e.size()) != n) throw ParseError("exponent vector has wrong length");
    for (int v : e)
      if (v < 0) throw ParseError("negative exponent");
    p.add_term(e, field<double>(t, "coef"));
  }
  return p;
}

GraphInstance graph_from_json(const Json& j) {
  GraphInstance g;
  g.n = checked_n(j);
  for (const auto& e : field<Json>(j, "edges")) {
    if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a pair");
    const int a = e[0].get<int>(), b = e[1].get<int>();
    if (a < 0 || b < 0 || a >= g.n || b >= g.n) throw ParseError("edge endpoint out of range");
    g.edges.emplace_back(a, b);
  }
  if (j.contains("weights")) {
    g.weights = field<std::vector<double>>(j, "weights");
    if (g.weights.size() != g.edges.size()) throw ParseError("weights and edges differ in length");
  }
  return g;
}

Eigen::MatrixXd weight_matrix(const GraphInstance& g) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(g.n, g.n);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [a, b] = g.edges[e];
    const double v = g.weights.empty() ? 1.0 : g.weights[e];
    w(a, b) += v;
    if (a != b) w(b, a) += v;
  }
  return w;
}

Json to_json(const SosCubeCertificate& c) {
  Json weights = Json::array();
  for (std::size_t y = 0; y < c.weights.size(); ++y)
    if (c.weights[y] != 0.0) weights.push_back({{"y", to_bitstring(y, c.n)}, {"w", c.weights[y]}});
  return {{"n", c.n},
          {"delta", c.delta},
          {"r", c.r},
          {"u_coeffs", std::vector<double>(c.u_coeffs.data(), c.u_coeffs.data() + c.u_coeffs.size())},
          {"weights", weights},
          {"translate", to_bitstring(c.translate, c.n)},
          {"scale", c.scale},
          {"offset", c.offset},
          {"residual", c.residual},
          {"lambda_tilde", c.lambda_tilde},
          {"Lambda", c.Lambda},
          {"closed_form", c.closed_form},
          {"closed_form_applicable", c.closed_form_applicable}};
}

SosCubeCertificate certificate_from_json(const Json& j) {
  SosCubeCertificate c;
  c.n = checked_n(j);
  c.delta = field<double>(j, "delta");
  c.r = field<int>(j, "r");
  const auto u = field<std::vector<double>>(j, "u_coeffs");
  c.u_coeffs = Eigen::Map<const Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size()));
  try {
    c.u_sq = u_sq_from_coeffs(c.n, c.u_coeffs);
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
  c.weights.assign(std::size_t{1} << c.n, 0.0);
  for (const auto& w : field<Json>(j, "weights")) c.weights[bitstring_field(w, "y", c.n)] = field<double>(w, "w");
  c.translate = bitstring_field(j, "translate", c.n);
  c.scale = field<double>(j, "scale");
  c.offset = j.value("offset", 0.0);
  c.residual = j.value("residual", 0.0);
  c.lambda_tilde = j.value("lambda_tilde", 0.0);
  c.Lambda = j.value("Lambda", 0.0);
  c.closed_form = j.value("closed_form", 0.0);
  c.closed_form_applicable = j.value("closed_form_applicable", false);
  return c;
}

Json to_json(const OuterBoundResult& r) {
  Json gram = Json::array();
  for (Eigen::Index i = 0; i < r.gram.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < r.gram.cols(); ++k) row.push_back(r.gram(i, k));
    gram.push_back(row);
  }
  return {{"r", r.r}, {"value", r.value}, {"status", to_string(r.status)}, {"gap", r.gap}, {"gram", gram}};
}

void CsvWriter::header(const std::vector<std::string>& cols) {
  for (const auto& c : cols) cell(c);
  end_row();
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_double(v)); }

CsvWriter& CsvWriter::cell(long long v) { return cell(std::to_string(v)); }

CsvWriter& CsvWriter::cell(const std::string& v) {
  if (!first_) os_ << ',';
  first_ = false;
  if (v.find_first_of(",\"\n") != std::string::npos) {
    os_ << '"';
    for (char ch : v) {
      if (ch == '"') os_ << '"';
      os_ << ch;
    }
    os_ << '"';
  } else {
    os_ << v;
  }
  return *this;
}

void CsvWriter::end_row() {
  os_ << '\n';
  first_ = true;
}

}  // namespace cubesos

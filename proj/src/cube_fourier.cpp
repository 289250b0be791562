#include "cubesos/cube_fourier.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "cubesos/config.hpp"
#include "cubesos/errors.hpp"

namespace cubesos {

std::string to_bitstring(Mask x, int n) {
  std::string s(n, '0');
  for (int i = 0; i < n; ++i)
    if ((x >> i) & 1) s[i] = '1';
  return s;
}

Mask from_bitstring(const std::string& s) {
  if (s.size() > 63) throw DimensionError("bitstring longer than 63");
  Mask x = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      x |= Mask{1} << i;
    else if (s[i] != '0')
      throw ParseError("bitstring contains '" + std::string(1, s[i]) + "'");
  }
  return x;
}

Mask from_indices(const std::vector<int>& one_based) {
  Mask s = 0;
  for (int v : one_based) {
    if (v < 1 || v > 63) throw DimensionError("variable index out of range");
    s |= Mask{1} << (v - 1);
  }
  return s;
}

bool lex_less(Mask x, Mask y) {
  if (x == y) return false;
  Mask diff = x ^ y;
  return ((x >> __builtin_ctzll(diff)) & 1) == 0;
}

// ---------------------------------------------------------------- CubePolynomial

CubePolynomial::CubePolynomial(int n) : n_(n) {
  if (n < 0 || n > 63) throw DimensionError("dimension must be in [0, 63]");
}

CubePolynomial CubePolynomial::constant(int n, double c) {
  CubePolynomial p(n);
  p.add_term(0, c);
  return p;
}

int CubePolynomial::degree() const {
  int d = 0;
  for (const auto& [s, c] : terms_) d = std::max(d, weight(s));
  return d;
}

double CubePolynomial::coef(Mask s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? 0.0 : it->second;
}

void CubePolynomial::add_term(Mask s, double c) {
  if (n_ < 64 && (s >> n_) != 0) throw DimensionError("monomial uses a variable beyond n");
  if (!std::isfinite(c)) throw DomainError("non-finite coefficient");
  if (c == 0.0) return;
  auto [it, fresh] = terms_.try_emplace(s, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

void CubePolynomial::set_term(Mask s, double c) {
  terms_.erase(s);
  add_term(s, c);
}

void CubePolynomial::add_monomial(const std::vector<int>& vars, double c) {
  for (int v : vars)
    if (v < 1 || v > n_) throw DimensionError("variable index out of range");
  add_term(from_indices(vars), c);
}

double CubePolynomial::operator()(Mask x) const { return evaluate(*this, x); }

CubePolynomial& CubePolynomial::operator+=(const CubePolynomial& o) {
  if (o.n_ != n_) throw DimensionError("dimension mismatch");
  for (const auto& [s, c] : o.terms_) add_term(s, c);
  return *this;
}

CubePolynomial& CubePolynomial::operator-=(const CubePolynomial& o) {
  if (o.n_ != n_) throw DimensionError("dimension mismatch");
  for (const auto& [s, c] : o.terms_) add_term(s, -c);
  return *this;
}

CubePolynomial& CubePolynomial::operator*=(double f) {
  if (f == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [s, c] : terms_) c *= f;
  return *this;
}

CubePolynomial CubePolynomial::operator*(const CubePolynomial& o) const {
  if (o.n_ != n_) throw DimensionError("dimension mismatch");
  CubePolynomial r(n_);
  for (const auto& [s, c] : terms_)
    for (const auto& [t, e] : o.terms_) r.add_term(s | t, c * e);
  return r;
}

// ---------------------------------------------------------------- FourierPolynomial

double FourierPolynomial::coef(Mask a) const {
  auto it = coeffs_.find(a);
  return it == coeffs_.end() ? 0.0 : it->second;
}

void FourierPolynomial::add(Mask a, double c) {
  if (c == 0.0) return;
  auto [it, fresh] = coeffs_.try_emplace(a, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0.0) coeffs_.erase(it);
  }
}

void FourierPolynomial::set(Mask a, double c) {
  coeffs_.erase(a);
  add(a, c);
}

double FourierPolynomial::operator()(Mask x) const {
  double s = 0.0;
  for (const auto& [a, c] : coeffs_) s += c * character(a, x);
  return s;
}

int FourierPolynomial::degree() const {
  int d = 0;
  for (const auto& [a, c] : coeffs_) d = std::max(d, weight(a));
  return d;
}

// ---------------------------------------------------------------- transforms

void walsh_hadamard(std::vector<double>& v) {
  const std::size_t N = v.size();
  for (std::size_t h = 1; h < N; h <<= 1)
    for (std::size_t i = 0; i < N; i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        double a = v[j], b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
}

void subset_sum(std::vector<double>& v) {
  const std::size_t N = v.size();
  for (std::size_t h = 1; h < N; h <<= 1)
    for (std::size_t i = 0; i < N; i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) v[j + h] += v[j];
}

void subset_difference(std::vector<double>& v) {
  const std::size_t N = v.size();
  for (std::size_t h = 1; h < N; h <<= 1)
    for (std::size_t i = 0; i < N; i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) v[j + h] -= v[j];
}

double evaluate(const CubePolynomial& p, Mask x) {
  if (p.n() < 64 && (x >> p.n()) != 0) throw DimensionError("point has coordinates beyond n");
  double s = 0.0;
  for (const auto& [m, c] : p.terms())
    if ((m & ~x) == 0) s += c;
  return s;
}

std::vector<double> value_table(const CubePolynomial& p) {
  require_within_cap(p.n(), "value_table");
  std::vector<double> v(std::size_t{1} << p.n(), 0.0);
  for (const auto& [s, c] : p.terms()) v[s] = c;
  subset_sum(v);
  return v;
}

std::vector<double> fourier_table(const CubePolynomial& p) {
  std::vector<double> v = value_table(p);
  walsh_hadamard(v);
  const double scale = std::ldexp(1.0, -p.n());
  const int d = p.degree();
  for (std::size_t a = 0; a < v.size(); ++a) v[a] = weight(a) > d ? 0.0 : v[a] * scale;
  return v;
}

FourierPolynomial fourier_transform(const CubePolynomial& p) {
  std::vector<double> t = fourier_table(p);
  FourierPolynomial f(p.n());
  for (std::size_t a = 0; a < t.size(); ++a)
    if (t[a] != 0.0) f.set(a, t[a]);
  return f;
}

CubePolynomial from_value_table(const std::vector<double>& values, int n) {
  if (values.size() != (std::size_t{1} << n)) throw DimensionError("value table size is not 2^n");
  std::vector<double> c = values;
  subset_difference(c);
  CubePolynomial p(n);
  for (std::size_t s = 0; s < c.size(); ++s)
    if (c[s] != 0.0) p.set_term(s, c[s]);
  return p;
}

CubePolynomial inverse_fourier(const FourierPolynomial& f) {
  const int n = f.n();
  double expand_cost = 0.0;
  for (const auto& [a, c] : f.coeffs()) expand_cost += std::ldexp(1.0, weight(a));
  if (n <= config().max_n && n <= 30 && expand_cost > (n + 1) * std::ldexp(1.0, n)) {
    std::vector<double> v(std::size_t{1} << n, 0.0);
    for (const auto& [a, c] : f.coeffs()) v[a] = c;
    walsh_hadamard(v);
    return from_value_table(v, n);
  }
  // chi_a = prod_{i in a} (1 - 2 x_i) = sum_{S subset a} (-2)^{|S|} x_S
  CubePolynomial p(n);
  for (const auto& [a, c] : f.coeffs()) {
    Mask s = a;
    while (true) {
      p.add_term(s, std::ldexp(weight(s) % 2 ? -c : c, weight(s)));
      if (s == 0) break;
      s = (s - 1) & a;
    }
  }
  return p;
}

HarmonicDecomposition harmonic_parts(const CubePolynomial& p) {
  FourierPolynomial f = fourier_transform(p);
  HarmonicDecomposition h;
  h.parts.assign(p.n() + 1, FourierPolynomial(p.n()));
  for (const auto& [a, c] : f.coeffs()) h.parts[weight(a)].set(a, c);
  return h;
}

double sup_norm(const CubePolynomial& p) {
  double m = 0.0;
  for (double v : value_table(p)) m = std::max(m, std::abs(v));
  return m;
}

MinResult brute_force_min(const CubePolynomial& p) {
  std::vector<double> v = value_table(p);
  MinResult best{v[0], 0};
  for (std::size_t x = 1; x < v.size(); ++x)
    if (v[x] < best.value || (v[x] == best.value && lex_less(x, best.argmin))) best = {v[x], x};
  return best;
}

CubePolynomial translate_to_zero(const CubePolynomial& p, Mask x0) {
  if (p.n() < 64 && (x0 >> p.n()) != 0) throw DimensionError("shift has coordinates beyond n");
  CubePolynomial q(p.n());
  for (const auto& [s, c] : p.terms()) {
    Mask flip = s & x0, keep = s & ~x0;
    // prod_{i in flip} (1 - x_i)
    Mask u = flip;
    while (true) {
      q.add_term(keep | u, weight(u) % 2 ? -c : c);
      if (u == 0) break;
      u = (u - 1) & flip;
    }
  }
  return q;
}

double inner_product(const FourierPolynomial& p, const FourierPolynomial& q) {
  if (p.n() != q.n()) throw DimensionError("dimension mismatch");
  double s = 0.0;
  for (const auto& [a, c] : p.coeffs()) s += c * q.coef(a);
  return s;
}

// ---------------------------------------------------------------- MatrixPolynomial

MatrixPolynomial::MatrixPolynomial(int n, int k)
    : n_(n), k_(k), entries_(static_cast<std::size_t>(k) * k, CubePolynomial(n)) {}

int MatrixPolynomial::degree() const {
  int d = 0;
  for (const auto& e : entries_) d = std::max(d, e.degree());
  return d;
}

const CubePolynomial& MatrixPolynomial::operator()(int i, int j) const {
  if (i < 0 || j < 0 || i >= k_ || j >= k_) throw DimensionError("matrix index out of range");
  return entries_[static_cast<std::size_t>(i) * k_ + j];
}

void MatrixPolynomial::set(int i, int j, const CubePolynomial& p) {
  if (i < 0 || j < 0 || i >= k_ || j >= k_) throw DimensionError("matrix index out of range");
  if (p.n() != n_) throw DimensionError("entry dimension mismatch");
  entries_[static_cast<std::size_t>(i) * k_ + j] = p;
  entries_[static_cast<std::size_t>(j) * k_ + i] = p;
}

namespace {

template <class Visit>
void for_each_matrix_value(const MatrixPolynomial& F, Visit visit) {
  const int k = F.k();
  std::vector<std::vector<double>> tables;
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) tables.push_back(value_table(F(i, j)));
  Eigen::MatrixXd M(k, k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  for (std::size_t x = 0; x < (std::size_t{1} << F.n()); ++x) {
    int idx = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) M(i, j) = M(j, i) = tables[idx++][x];
    es.compute(M, Eigen::EigenvaluesOnly);
    visit(static_cast<Mask>(x), es.eigenvalues());
  }
}

}  // namespace

MinResult brute_force_min(const MatrixPolynomial& F) {
  MinResult best{std::numeric_limits<double>::infinity(), 0};
  for_each_matrix_value(F, [&](Mask x, const Eigen::VectorXd& ev) {
    if (ev(0) < best.value) best = {ev(0), x};
  });
  return best;
}

double sup_norm(const MatrixPolynomial& F) {
  double m = 0.0;
  for_each_matrix_value(F, [&](Mask, const Eigen::VectorXd& ev) {
    m = std::max({m, std::abs(ev(0)), std::abs(ev(ev.size() - 1))});
  });
  return m;
}

}  // namespace cubesos

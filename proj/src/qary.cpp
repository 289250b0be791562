#include "cubesos/qary.hpp"

#include <cmath>
#include <mutex>
#include <random>

#include "cubesos/config.hpp"
#include "cubesos/errors.hpp"
#include "cubesos/krawtchouk.hpp"

namespace cubesos {

namespace {

// x^e modulo x (x-1) ... (x-q+1), as coefficients of 1, x, ..., x^{q-1}.
std::vector<double> reduce_power(int e, int q) {
  // P(x) = x^q + sum_{j<q} p_j x^j
  std::vector<double> P(q + 1, 0.0);
  P[0] = 1.0;
  for (int root = 0; root < q; ++root) {
    std::vector<double> next(q + 1, 0.0);
    for (int j = 0; j < q; ++j) {
      next[j + 1] += P[j];
      next[j] -= root * P[j];
    }
    P = next;
  }
  std::vector<double> v(q, 0.0);
  if (e < q) {
    v[e] = 1.0;
    return v;
  }
  v[q - 1] = 1.0;
  for (int k = q - 1; k < e; ++k) {
    // multiply by x, then fold x^q
    const double top = v[q - 1];
    for (int j = q - 1; j > 0; --j) v[j] = v[j - 1];
    v[0] = 0.0;
    for (int j = 0; j < q; ++j) v[j] -= top * P[j];
  }
  return v;
}

std::uint64_t point_count(int n, int q) {
  std::uint64_t N = 1;
  for (int i = 0; i < n; ++i) {
    N *= static_cast<std::uint64_t>(q);
    if (N > (std::uint64_t{1} << 24)) throw CapExceeded("qary_brute_min: q^n above 2^24");
  }
  return N;
}

// Digit i of the index is x_{i+1}; x_1 is the most significant.
std::vector<int> decode(std::uint64_t idx, int n, int q) {
  std::vector<int> x(n);
  for (int i = n - 1; i >= 0; --i) {
    x[i] = static_cast<int>(idx % q);
    idx /= q;
  }
  return x;
}

struct Evaluator {
  int n, q;
  std::vector<std::pair<Exponents, double>> terms;
  explicit Evaluator(const QaryPolynomial& f) : n(f.n()), q(f.q()), terms(f.terms().begin(), f.terms().end()) {}
  double operator()(const std::vector<int>& x) const {
    double s = 0.0;
    for (const auto& [e, c] : terms) {
      double m = c;
      for (int i = 0; i < n && m != 0.0; ++i)
        if (e[i] > 0) m *= std::pow(static_cast<double>(x[i]), e[i]);
      s += m;
    }
    return s;
  }
};

}  // namespace

QaryPolynomial::QaryPolynomial(int n, int q) : n_(n), q_(q) {
  if (n < 0) throw DimensionError("QaryPolynomial: negative n");
  if (q < 2) throw DomainError("QaryPolynomial: q must be at least 2");
}

int QaryPolynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

void QaryPolynomial::add_term(const Exponents& e, double c) {
  if (static_cast<int>(e.size()) != n_) throw DimensionError("QaryPolynomial: exponent length != n");
  if (c == 0.0) return;
  std::vector<std::pair<Exponents, double>> acc{{Exponents(n_, 0), c}};
  for (int i = 0; i < n_; ++i) {
    if (e[i] < 0) throw DomainError("QaryPolynomial: negative exponent");
    if (e[i] < q_) {
      for (auto& [ex, v] : acc) ex[i] = e[i];
      continue;
    }
    const std::vector<double> red = reduce_power(e[i], q_);
    std::vector<std::pair<Exponents, double>> next;
    for (const auto& [ex, v] : acc)
      for (int j = 0; j < q_; ++j)
        if (red[j] != 0.0) {
          Exponents ne = ex;
          ne[i] = j;
          next.emplace_back(std::move(ne), v * red[j]);
        }
    acc = std::move(next);
  }
  for (const auto& [ex, v] : acc) {
    const double nv = (terms_[ex] += v);
    if (nv == 0.0) terms_.erase(ex);
  }
}

double QaryPolynomial::operator()(const std::vector<int>& x) const {
  if (static_cast<int>(x.size()) != n_) throw DimensionError("QaryPolynomial: point length != n");
  return Evaluator(*this)(x);
}

QaryMin qary_brute_min(const QaryPolynomial& f) {
  const std::uint64_t N = point_count(f.n(), f.q());
  const Evaluator ev(f);
  std::mutex mu;
  std::pair<double, std::uint64_t> b{INFINITY, 0};
  parallel_for(N, [&](std::size_t lo, std::size_t hi) {
    std::pair<double, std::uint64_t> local{INFINITY, lo};
    for (std::uint64_t i = lo; i < hi; ++i) {
      const double v = ev(decode(i, f.n(), f.q()));
      if (v < local.first) local = {v, i};
    }
    std::lock_guard<std::mutex> lock(mu);
    if (local.first < b.first || (local.first == b.first && local.second < b.second)) b = local;
  });
  return {b.first, decode(b.second, f.n(), f.q())};
}

QaryMin qary_brute_min_reverse(const QaryPolynomial& f) {
  const std::uint64_t N = point_count(f.n(), f.q());
  const int n = f.n(), q = f.q();
  QaryMin best{INFINITY, {}};
  // x_n varies slowest, counting down
  std::vector<int> x(n, q - 1);
  for (std::uint64_t k = 0; k < N; ++k) {
    double v = 0.0;
    for (const auto& [e, c] : f.terms()) {
      double m = c;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < e[i]; ++j) m *= x[i];
      v += m;
    }
    if (v <= best.value) {
      if (v < best.value || x < best.argmin) best = {v, x};
    }
    for (int i = 0; i < n; ++i) {
      if (x[i] > 0) {
        --x[i];
        break;
      }
      x[i] = q - 1;
    }
  }
  return best;
}

QaryPolynomial qary_hamming_weight(int n, int q) {
  // [x != 0] = 1 - prod_{j=1}^{q-1} (j - x) / j, expanded in powers of x
  std::vector<double> p{1.0};
  for (int j = 1; j < q; ++j) {
    std::vector<double> next(p.size() + 1, 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) {
      next[k] += p[k];
      next[k + 1] -= p[k] / j;
    }
    p = next;
  }
  QaryPolynomial f(n, q);
  for (int i = 0; i < n; ++i)
    for (std::size_t k = 1; k < p.size(); ++k) {
      Exponents e(n, 0);
      e[i] = static_cast<int>(k);
      f.add_term(e, -p[k]);
    }
  return f;
}

QaryPolynomial random_qary_poly(int n, int q, int d, std::uint64_t seed) {
  if (d < 0 || d > n * (q - 1)) throw DomainError("random_qary_poly: degree out of range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  QaryPolynomial f(n, q);
  Exponents e(n, 0);
  // all reduced exponent vectors with total degree <= d
  for (;;) {
    int s = 0;
    for (int v : e) s += v;
    if (s <= d) {
      double c = U(rng);
      while (s == d && c == 0.0) c = U(rng);
      f.add_term(e, c);
    }
    int i = n - 1;
    while (i >= 0 && e[i] == q - 1) e[i--] = 0;
    if (i < 0) break;
    ++e[i];
  }
  return f;
}

InnerBoundResult qary_inner_symmetrized(const std::vector<double>& F, int q, int r) {
  if (F.empty()) throw DimensionError("qary_inner_symmetrized: empty F");
  const int n = static_cast<int>(F.size()) - 1;
  return inner_univariate_values(F, DiscreteMeasure::krawtchouk(n, q), r);
}

std::vector<PhiRow> phi_q_sweep(const std::vector<int>& q_list, const std::vector<int>& n_list,
                                const std::vector<double>& t_grid) {
  std::vector<PhiRow> rows;
  for (int q : q_list) {
    if (n_list.empty())
      for (double t : t_grid) {
        const double tmax = static_cast<double>(q - 1) / q;
        rows.push_back({q, 0, 0, t, std::nan(""), levenshtein_phi(std::min(t, tmax), q)});
      }
    for (int n : n_list)
      for (double t : t_grid) {
        PhiRow row;
        row.q = q;
        row.n = n;
        row.t = t;
        row.r = static_cast<int>(std::floor(t * n + 1e-9));
        const double tmax = static_cast<double>(q - 1) / q;
        row.phi = levenshtein_phi(std::min(t, tmax), q);
        if (row.r < 1 || row.r > n) continue;
        row.xi_over_n = least_root(n, q, row.r) / n;
        rows.push_back(row);
      }
  }
  return rows;
}

}  // namespace cubesos

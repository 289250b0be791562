#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cubesos/inner.hpp"

namespace cubesos {

using Exponents = std::vector<int>;

// Polynomial on {0,...,q-1}^n, reduced modulo x_i (x_i - 1) ... (x_i - q + 1).
class QaryPolynomial {
 public:
  QaryPolynomial(int n = 0, int q = 2);

  int n() const { return n_; }
  int q() const { return q_; }
  const std::map<Exponents, double>& terms() const { return terms_; }
  int degree() const;

  // Any nonnegative exponents; reduced on insertion.
  void add_term(const Exponents& e, double c);
  double operator()(const std::vector<int>& x) const;

 private:
  int n_, q_;
  std::map<Exponents, double> terms_;
};

struct QaryMin {
  double value = 0.0;
  std::vector<int> argmin;
};

// Exact minimum over the q-ary cube; ties go to the lexicographically first point.
QaryMin qary_brute_min(const QaryPolynomial& f);
// Same minimum with points enumerated in reverse; ties still resolved lexicographically.
QaryMin qary_brute_min_reverse(const QaryPolynomial& f);

// sum_i [x_i != 0]
QaryPolynomial qary_hamming_weight(int n, int q);
// Independent uniform[-1,1] coefficients on all exponent vectors of total degree <= d.
QaryPolynomial random_qary_poly(int n, int q, int d, std::uint64_t seed);

// Inner hierarchy for a weight-invariant F given by F(0..n), with the q-ary measure.
InnerBoundResult qary_inner_symmetrized(const std::vector<double>& F, int q, int r);

struct PhiRow {
  int q = 2;
  int n = 0;
  int r = 0;
  double t = 0.0;
  double xi_over_n = 0.0;
  double phi = 0.0;
};

// For every q, n and t in the grid: r = floor(t n) (rows with r < 1 are skipped).
// With no n given, only the phi_q curve is emitted (n = 0, xi_over_n = NaN).
std::vector<PhiRow> phi_q_sweep(const std::vector<int>& q_list, const std::vector<int>& n_list,
                                const std::vector<double>& t_grid);

}  // namespace cubesos

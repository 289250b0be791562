#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cubesos {

// Subsets of [n] and points of {0,1}^n share one encoding: bit i <-> x_{i+1}.
using Mask = std::uint64_t;

inline int weight(Mask a) { return __builtin_popcountll(a); }
inline int parity(Mask a) { return __builtin_parityll(a); }
inline double character(Mask a, Mask x) { return parity(a & x) ? -1.0 : 1.0; }

// Length-n bitstring with x_1 leftmost.
std::string to_bitstring(Mask x, int n);
Mask from_bitstring(const std::string& s);
Mask from_indices(const std::vector<int>& one_based);

// True when x precedes y in the lexicographic order of their bitstrings.
bool lex_less(Mask x, Mask y);

// Multilinear polynomial on {0,1}^n, keyed by monomial support.
class CubePolynomial {
 public:
  explicit CubePolynomial(int n = 0);
  static CubePolynomial constant(int n, double c);

  int n() const { return n_; }
  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  const std::map<Mask, double>& terms() const { return terms_; }
  double coef(Mask s) const;

  // Accumulates c into monomial x_S; exact zeros are erased.
  void add_term(Mask s, double c);
  void set_term(Mask s, double c);
  // Reduces repeated variables (x_i^2 = x_i) before adding.
  void add_monomial(const std::vector<int>& one_based_vars, double c);

  double operator()(Mask x) const;

  CubePolynomial& operator+=(const CubePolynomial& o);
  CubePolynomial& operator-=(const CubePolynomial& o);
  CubePolynomial& operator*=(double s);
  friend CubePolynomial operator+(CubePolynomial a, const CubePolynomial& b) { return a += b; }
  friend CubePolynomial operator-(CubePolynomial a, const CubePolynomial& b) { return a -= b; }
  friend CubePolynomial operator*(CubePolynomial a, double s) { return a *= s; }
  friend CubePolynomial operator*(double s, CubePolynomial a) { return a *= s; }
  CubePolynomial operator*(const CubePolynomial& o) const;

  bool operator==(const CubePolynomial& o) const = default;

 private:
  int n_;
  std::map<Mask, double> terms_;
};

// Fourier (character) expansion p = sum_a coeffs[a] chi_a.
class FourierPolynomial {
 public:
  explicit FourierPolynomial(int n = 0) : n_(n) {}
  int n() const { return n_; }
  const std::map<Mask, double>& coeffs() const { return coeffs_; }
  double coef(Mask a) const;
  void add(Mask a, double c);
  void set(Mask a, double c);
  double operator()(Mask x) const;
  int degree() const;
  bool is_zero() const { return coeffs_.empty(); }

 private:
  int n_;
  std::map<Mask, double> coeffs_;
};

struct HarmonicDecomposition {
  std::vector<FourierPolynomial> parts;  // parts[k] has weight-k support only
};

// In-place Walsh-Hadamard butterfly (unnormalized).
void walsh_hadamard(std::vector<double>& v);
// In-place subset-sum transform: v[x] <- sum_{S subset x} v[S].
void subset_sum(std::vector<double>& v);
// Inverse of subset_sum.
void subset_difference(std::vector<double>& v);

double evaluate(const CubePolynomial& p, Mask x);
// p(x) for every x, indexed by mask.
std::vector<double> value_table(const CubePolynomial& p);
// Fourier coefficients for every a, indexed by mask.
std::vector<double> fourier_table(const CubePolynomial& p);

FourierPolynomial fourier_transform(const CubePolynomial& p);
CubePolynomial inverse_fourier(const FourierPolynomial& f);
CubePolynomial from_value_table(const std::vector<double>& values, int n);

HarmonicDecomposition harmonic_parts(const CubePolynomial& p);

double sup_norm(const CubePolynomial& p);

struct MinResult {
  double value;
  Mask argmin;
};
MinResult brute_force_min(const CubePolynomial& p);

// q(x) = p(x XOR x0).
CubePolynomial translate_to_zero(const CubePolynomial& p, Mask x0);

// <p, q>_mu = 2^-n sum_x p(x) q(x).
double inner_product(const FourierPolynomial& p, const FourierPolynomial& q);

// Symmetric k x k matrix of cube polynomials.
class MatrixPolynomial {
 public:
  MatrixPolynomial(int n = 0, int k = 0);
  int n() const { return n_; }
  int k() const { return k_; }
  int degree() const;
  const CubePolynomial& operator()(int i, int j) const;
  // Sets entry (i,j) and its mirror (j,i).
  void set(int i, int j, const CubePolynomial& p);

 private:
  int n_, k_;
  std::vector<CubePolynomial> entries_;  // row-major, kept symmetric
};

// Smallest eigenvalue of F(x) over the cube, with a minimizing point.
MinResult brute_force_min(const MatrixPolynomial& F);
// max_x ||F(x)||_2 (spectral norm).
double sup_norm(const MatrixPolynomial& F);

}  // namespace cubesos

#pragma once

// Sensing Hamiltonian in a fixed total-excitation sector.
//
// Basis ordering used everywhere in the library and in file outputs:
//   index 0..N        : |down, N-n, n>    (n = photons in mode b)
//   index N+1..2N     : |up, N-m, m-1>    (m = 1..N)
// The Hamiltonian is chiral, H = [[0, A^T], [A, 0]] in this ordering, with
// the N x (N+1) coupling block A[m, k] connecting up-site m to down-site k.

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace fslsense {

/// Physical parameters of one fixed-N sector. theta is stored in radians and
/// canonicalized to (-pi, pi]; cos/sin are cached at construction.
class ModelParams {
 public:
  ModelParams(long n_excitations, double theta, double gamma, double g = 1.0);

  /// theta given in units of pi (0.2 means 0.2*pi). Quarter-turn multiples
  /// get exact trigonometric values.
  static ModelParams from_units_of_pi(long n_excitations, double theta_over_pi,
                                      double gamma, double g = 1.0);

  long n() const { return n_; }
  double theta() const { return theta_; }
  double theta_over_pi() const;
  double gamma() const { return gamma_; }
  double g() const { return g_; }
  double cos_theta() const { return cos_; }
  double sin_theta() const { return sin_; }

  ModelParams with_n(long n) const;
  ModelParams with_theta(double theta) const;
  ModelParams with_gamma(double gamma) const;

 private:
  ModelParams(long n, double theta, double gamma, double g, double c, double s);

  long n_;
  double theta_;
  double gamma_;
  double g_;
  double cos_;
  double sin_;
};

/// cos(pi x) and sin(pi x) with exact values at multiples of 1/2.
double cos_pi(double x);
double sin_pi(double x);

struct HoppingTriple {
  long cell;
  double v;  // intracell
  double w;  // nearest-neighbour intercell
  double t;  // second-neighbour intercell
};

/// v_n = g cos(theta) sqrt(n), w_n = g sin(theta) sqrt(N-n+1),
/// t_n = (gamma/N) sqrt((n-1)(N-n+1)(N-n+2)).
HoppingTriple hoppings(const ModelParams& params, long cell);

/// Banded N x (N+1) block. Row m (1-based) has A[m,m] = v_m, A[m,m-1] = w_m,
/// A[m,m-2] = t_m; columns are down-sites k = 0..N.
class CouplingMatrix {
 public:
  CouplingMatrix(std::vector<double> v, std::vector<double> w,
                 std::vector<double> t);

  std::size_t rows() const { return v_.size(); }
  std::size_t cols() const { return v_.size() + 1; }

  /// Entry with 1-based row m and 0-based column k.
  double at(long m, long k) const;

  std::span<const double> v_band() const { return v_; }
  std::span<const double> w_band() const { return w_; }
  std::span<const double> t_band() const { return t_; }

  /// out[m-1] = sum_k A[m,k] u[k]. u.size() == cols().
  std::vector<double> apply(std::span<const double> u) const;

  Eigen::MatrixXd dense() const;
  /// Full (2N+1)^2 chiral Hamiltonian in the documented basis ordering.
  Eigen::MatrixXd hamiltonian() const;

 private:
  std::vector<double> v_, w_, t_;
};

CouplingMatrix coupling_matrix(const ModelParams& params);

/// Elementwise d/dtheta of coupling_matrix; the t band is theta independent.
CouplingMatrix coupling_matrix_dtheta(const ModelParams& params);

/// diag(+1 on down sites, -1 on up sites).
Eigen::VectorXd chiral_operator_diagonal(long n_excitations);

}  // namespace fslsense

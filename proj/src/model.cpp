#include "fslsense/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fslsense/errors.hpp"
#include "fslsense/kernels.hpp"

namespace fslsense {
namespace {

constexpr double kPi = std::numbers::pi;

// Reduce x (units of pi) to (-1, 1].
double canonical_units_of_pi(double x) {
  double r = std::remainder(x, 2.0);
  if (r <= -1.0) r += 2.0;
  return r;
}

double canonical_radians(double theta) {
  double r = std::remainder(theta, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

void validate(long n, double theta, double gamma, double g) {
  if (n < 1) throw DomainError("n_excitations must be >= 1, got " + std::to_string(n));
  if (!std::isfinite(theta)) throw DomainError("theta must be finite");
  if (!std::isfinite(gamma)) throw DomainError("gamma must be finite");
  if (!(g > 0.0) || !std::isfinite(g)) throw DomainError("g must be positive and finite");
}

}  // namespace

double cos_pi(double x) {
  const double r = canonical_units_of_pi(x);
  if (r == 0.0) return 1.0;
  if (r == 1.0) return -1.0;
  if (r == 0.5 || r == -0.5) return 0.0;
  return std::cos(kPi * r);
}

double sin_pi(double x) {
  const double r = canonical_units_of_pi(x);
  if (r == 0.0 || r == 1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == -0.5) return -1.0;
  return std::sin(kPi * r);
}

ModelParams::ModelParams(long n, double theta, double gamma, double g, double c,
                         double s)
    : n_(n), theta_(theta), gamma_(gamma), g_(g), cos_(c), sin_(s) {}

ModelParams::ModelParams(long n_excitations, double theta, double gamma, double g)
    : n_(n_excitations), theta_(0.0), gamma_(gamma), g_(g), cos_(1.0), sin_(0.0) {
  validate(n_excitations, theta, gamma, g);
  theta_ = canonical_radians(theta);
  cos_ = std::cos(theta_);
  sin_ = std::sin(theta_);
}

ModelParams ModelParams::from_units_of_pi(long n_excitations, double theta_over_pi,
                                          double gamma, double g) {
  validate(n_excitations, theta_over_pi, gamma, g);
  const double r = canonical_units_of_pi(theta_over_pi);
  return ModelParams(n_excitations, kPi * r, gamma, g, cos_pi(r), sin_pi(r));
}

double ModelParams::theta_over_pi() const { return theta_ / kPi; }

ModelParams ModelParams::with_n(long n) const {
  validate(n, theta_, gamma_, g_);
  return ModelParams(n, theta_, gamma_, g_, cos_, sin_);
}

ModelParams ModelParams::with_theta(double theta) const {
  return ModelParams(n_, theta, gamma_, g_);
}

ModelParams ModelParams::with_gamma(double gamma) const {
  validate(n_, theta_, gamma, g_);
  return ModelParams(n_, theta_, gamma, g_, cos_, sin_);
}

HoppingTriple hoppings(const ModelParams& params, long cell) {
  const long N = params.n();
  if (cell < 1 || cell > N)
    throw DomainError("cell " + std::to_string(cell) + " outside [1, " +
                      std::to_string(N) + "]");
  const double n = static_cast<double>(cell);
  const double Nd = static_cast<double>(N);
  HoppingTriple h{cell, 0.0, 0.0, 0.0};
  h.v = params.g() * params.cos_theta() * std::sqrt(n);
  h.w = params.g() * params.sin_theta() * std::sqrt(Nd - n + 1.0);
  h.t = params.gamma() / Nd * std::sqrt((n - 1.0) * (Nd - n + 1.0) * (Nd - n + 2.0));
  return h;
}

CouplingMatrix::CouplingMatrix(std::vector<double> v, std::vector<double> w,
                               std::vector<double> t)
    : v_(std::move(v)), w_(std::move(w)), t_(std::move(t)) {
  if (v_.empty() || v_.size() != w_.size() || v_.size() != t_.size())
    throw DomainError("coupling bands must be non-empty and equally long");
}

double CouplingMatrix::at(long m, long k) const {
  const long rows_l = static_cast<long>(rows());
  if (m < 1 || m > rows_l || k < 0 || k > rows_l)
    throw DomainError("coupling matrix index out of range");
  const auto r = static_cast<std::size_t>(m - 1);
  if (k == m) return v_[r];
  if (k == m - 1) return w_[r];
  if (k == m - 2) return t_[r];
  return 0.0;
}

std::vector<double> CouplingMatrix::apply(std::span<const double> u) const {
  if (u.size() != cols()) throw DomainError("vector length must equal N+1");
  std::vector<double> out(rows());
  kernels::active().band3_apply(v_.data(), w_.data(), t_.data(), u.data(),
                                out.data(), rows());
  return out;
}

Eigen::MatrixXd CouplingMatrix::dense() const {
  const auto N = static_cast<Eigen::Index>(rows());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(N, N + 1);
  for (Eigen::Index r = 0; r < N; ++r) {
    a(r, r + 1) = v_[static_cast<std::size_t>(r)];
    a(r, r) = w_[static_cast<std::size_t>(r)];
    if (r > 0) a(r, r - 1) = t_[static_cast<std::size_t>(r)];
  }
  return a;
}

Eigen::MatrixXd CouplingMatrix::hamiltonian() const {
  const auto N = static_cast<Eigen::Index>(rows());
  const Eigen::MatrixXd a = dense();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * N + 1, 2 * N + 1);
  h.block(N + 1, 0, N, N + 1) = a;
  h.block(0, N + 1, N + 1, N) = a.transpose();
  return h;
}

CouplingMatrix coupling_matrix(const ModelParams& params) {
  const auto N = static_cast<std::size_t>(params.n());
  std::vector<double> v(N), w(N), t(N);
  for (std::size_t r = 0; r < N; ++r) {
    const HoppingTriple h = hoppings(params, static_cast<long>(r) + 1);
    v[r] = h.v;
    w[r] = h.w;
    t[r] = h.t;
  }
  return CouplingMatrix(std::move(v), std::move(w), std::move(t));
}

CouplingMatrix coupling_matrix_dtheta(const ModelParams& params) {
  const auto N = static_cast<std::size_t>(params.n());
  const double Nd = static_cast<double>(N);
  std::vector<double> v(N), w(N), t(N, 0.0);
  for (std::size_t r = 0; r < N; ++r) {
    const double n = static_cast<double>(r + 1);
    v[r] = -params.g() * params.sin_theta() * std::sqrt(n);
    w[r] = params.g() * params.cos_theta() * std::sqrt(Nd - n + 1.0);
  }
  return CouplingMatrix(std::move(v), std::move(w), std::move(t));
}

Eigen::VectorXd chiral_operator_diagonal(long n_excitations) {
  const Eigen::Index N = n_excitations;
  Eigen::VectorXd d(2 * N + 1);
  d.head(N + 1).setOnes();
  d.tail(N).setConstant(-1.0);
  return d;
}

}  // namespace fslsense

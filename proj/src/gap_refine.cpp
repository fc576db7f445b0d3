#include <mpfr.h>

#include <cmath>
#include <string>
#include <vector>

#include "fslsense/errors.hpp"
#include "fslsense/spectrum.hpp"

namespace fslsense {

namespace {

// Fixed-size array of MPFR numbers at one precision. Each number carries its
// own precision, so concurrent calls on different threads do not interact.
class MpVec {
 public:
  MpVec(std::size_t n, mpfr_prec_t prec) : d_(n) {
    for (auto& x : d_) {
      mpfr_init2(&x, prec);
      mpfr_set_zero(&x, 1);
    }
  }
  ~MpVec() {
    for (auto& x : d_) mpfr_clear(&x);
  }
  MpVec(const MpVec&) = delete;
  MpVec& operator=(const MpVec&) = delete;

  mpfr_ptr operator[](std::size_t i) { return &d_[i]; }
  std::size_t size() const { return d_.size(); }

 private:
  std::vector<__mpfr_struct> d_;
};

struct Bands {
  std::size_t m;
  MpVec v, w, t;
  Bands(const CouplingMatrix& a, mpfr_prec_t prec)
      : m(static_cast<std::size_t>(a.rows())), v(m, prec), w(m, prec), t(m, prec) {
    for (std::size_t r = 0; r < m; ++r) {
      mpfr_set_d(v[r], a.v_band()[r], MPFR_RNDN);
      mpfr_set_d(w[r], a.w_band()[r], MPFR_RNDN);
      mpfr_set_d(t[r], a.t_band()[r], MPFR_RNDN);
    }
  }
};

// Unnormalized null vector with u_0 = 1.
void null_vector(Bands& b, MpVec& u, mpfr_ptr tmp) {
  mpfr_set_ui(u[0], 1, MPFR_RNDN);
  for (std::size_t r = 0; r < b.m; ++r) {
    mpfr_mul(u[r + 1], b.w[r], u[r], MPFR_RNDN);
    if (r > 0) {
      mpfr_mul(tmp, b.t[r], u[r - 1], MPFR_RNDN);
      mpfr_add(u[r + 1], u[r + 1], tmp, MPFR_RNDN);
    }
    mpfr_div(u[r + 1], u[r + 1], b.v[r], MPFR_RNDN);
    mpfr_neg(u[r + 1], u[r + 1], MPFR_RNDN);
  }
}

// Decimal digits lost when a particular solution is projected off the null
// vector: about the dynamic range of u plus its magnitude.
long digits_needed(const CouplingMatrix& a) {
  Bands b(a, 64);
  MpVec u(b.m + 1, 64), tmp(1, 64);
  null_vector(b, u, tmp[0]);
  long e_max = 0, e_min = 0;
  bool first = true;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (mpfr_zero_p(u[i])) continue;
    const long e = mpfr_get_exp(u[i]);
    if (first || e > e_max) e_max = e;
    if (first || e < e_min) e_min = e;
    first = false;
  }
  const double log10_2 = std::log10(2.0);
  return static_cast<long>(std::ceil((2.0 * e_max - e_min) * log10_2)) + 80;
}

}  // namespace

RefinedGap smallest_singular_value_refined(const CouplingMatrix& a) {
  const long digits = digits_needed(a);
  const auto prec = static_cast<mpfr_prec_t>(std::ceil(digits / std::log10(2.0))) + 64;
  Bands b(a, prec);
  const std::size_t m = b.m;
  MpVec u(m + 1, prec), x(m + 1, prec), z(m, prec), s(6, prec);
  mpfr_ptr tmp = s[0], uu = s[1], k = s[2], lam = s[3], lam_prev = s[4], nrm = s[5];
  null_vector(b, u, tmp);
  mpfr_set_zero(uu, 1);
  for (std::size_t i = 0; i <= m; ++i) mpfr_fma(uu, u[i], u[i], uu, MPFR_RNDN);

  for (std::size_t i = 0; i < m; ++i) {
    mpfr_set_d(z[i], 1.0 + static_cast<double>(i) / static_cast<double>(m), MPFR_RNDN);
  }
  mpfr_set_zero(lam_prev, 1);
  constexpr int kMaxIterations = 2000;
  for (int it = 0; it < kMaxIterations; ++it) {
    // x = A^+ z: forward substitution with x_0 = 0, then project off u.
    mpfr_set_zero(x[0], 1);
    for (std::size_t r = 0; r < m; ++r) {
      mpfr_mul(tmp, b.w[r], x[r], MPFR_RNDN);
      mpfr_sub(x[r + 1], z[r], tmp, MPFR_RNDN);
      if (r > 0) {
        mpfr_mul(tmp, b.t[r], x[r - 1], MPFR_RNDN);
        mpfr_sub(x[r + 1], x[r + 1], tmp, MPFR_RNDN);
      }
      mpfr_div(x[r + 1], x[r + 1], b.v[r], MPFR_RNDN);
    }
    mpfr_set_zero(k, 1);
    for (std::size_t i = 0; i <= m; ++i) mpfr_fma(k, u[i], x[i], k, MPFR_RNDN);
    mpfr_div(k, k, uu, MPFR_RNDN);
    for (std::size_t i = 0; i <= m; ++i) {
      mpfr_mul(tmp, k, u[i], MPFR_RNDN);
      mpfr_sub(x[i], x[i], tmp, MPFR_RNDN);
    }
    // Rayleigh quotient of (A^+)^T A^+ with |z| = 1.
    mpfr_set_zero(lam, 1);
    for (std::size_t i = 0; i <= m; ++i) mpfr_fma(lam, x[i], x[i], lam, MPFR_RNDN);

    // z = (A^+)^T x: backward substitution against the columns 1..m of A.
    for (std::size_t rr = m; rr-- > 0;) {
      mpfr_set(z[rr], x[rr + 1], MPFR_RNDN);
      if (rr + 1 < m) {
        mpfr_mul(tmp, b.w[rr + 1], z[rr + 1], MPFR_RNDN);
        mpfr_sub(z[rr], z[rr], tmp, MPFR_RNDN);
      }
      if (rr + 2 < m) {
        mpfr_mul(tmp, b.t[rr + 2], z[rr + 2], MPFR_RNDN);
        mpfr_sub(z[rr], z[rr], tmp, MPFR_RNDN);
      }
      mpfr_div(z[rr], z[rr], b.v[rr], MPFR_RNDN);
    }
    mpfr_set_zero(nrm, 1);
    for (std::size_t i = 0; i < m; ++i) mpfr_fma(nrm, z[i], z[i], nrm, MPFR_RNDN);
    mpfr_sqrt(nrm, nrm, MPFR_RNDN);
    if (mpfr_zero_p(nrm)) throw NumericError("multiprecision gap refinement degenerated");
    for (std::size_t i = 0; i < m; ++i) mpfr_div(z[i], z[i], nrm, MPFR_RNDN);

    if (it > 0) {
      mpfr_sub(tmp, lam, lam_prev, MPFR_RNDN);
      mpfr_abs(tmp, tmp, MPFR_RNDN);
      mpfr_div(tmp, tmp, lam, MPFR_RNDN);
      if (mpfr_cmp_d(tmp, 1e-20) <= 0) {
        // sigma_min = lambda_max^(-1/2).
        mpfr_rec_sqrt(tmp, lam, MPFR_RNDN);
        mpfr_log(lam, tmp, MPFR_RNDN);
        return {mpfr_get_d(tmp, MPFR_RNDN), mpfr_get_d(lam, MPFR_RNDN)};
      }
    }
    mpfr_set(lam_prev, lam, MPFR_RNDN);
  }
  throw NumericError("multiprecision gap refinement did not converge in " +
                     std::to_string(kMaxIterations) + " iterations");
}

}  // namespace fslsense

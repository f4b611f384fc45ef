#include "ptsim/quantum.hpp"

#include <cmath>
#include <limits>

#include "ptsim/error.hpp"
#include "ptsim/linalg.hpp"
#include "ptsim/rng.hpp"

namespace ptsim {

namespace {

constexpr double kNormTol = 1e-12;

void require_state(const StateVector& psi, const char* who) {
  if (psi.dim() == 0) raise(ErrorCode::InvalidArgument, std::string(who) + ": empty state");
  for (const Complex& a : psi.amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      raise(ErrorCode::NonFinite, std::string(who) + ": state contains NaN/Inf");
    }
  }
}

// Internal eigendecomposition that reports instead of throwing on
// ill-conditioned eigenvector matrices, so callers can distinguish
// exceptional points from genuine failures.
struct SoftEig {
  std::vector<Complex> values;
  CMatrix vectors;
  double condition;
  bool diagonalizable;
};

SoftEig soft_eig(const CMatrix& h) {
  try {
    EigenDecomposition d = eig(h);
    return {std::move(d.eigenvalues), std::move(d.eigenvectors), d.condition_estimate, true};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotDiagonalizable) throw;
  }
  // Recompute eigenvalues alone from the Schur form.
  const SchurDecomposition sd = schur(h);
  std::vector<Complex> values(h.dim());
  for (std::size_t i = 0; i < h.dim(); ++i) values[i] = sd.t(i, i);
  return {std::move(values), CMatrix(), std::numeric_limits<double>::infinity(), false};
}

double max_pairwise_gap(const std::vector<Complex>& values, std::size_t* arg_lo,
                        std::size_t* arg_hi) {
  double best = -1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      const double gap = std::abs(values[i] - values[j]);
      if (gap > best) {
        best = gap;
        *arg_lo = i;
        *arg_hi = j;
      }
    }
  }
  return std::max(best, 0.0);
}

}  // namespace

StateVector StateVector::unit() const {
  const double n = norm();
  if (n <= 0.0 || !std::isfinite(n)) {
    raise(ErrorCode::InvalidArgument, "cannot normalize a zero or non-finite state");
  }
  StateVector out;
  out.amplitudes.resize(amplitudes.size());
  for (std::size_t i = 0; i < amplitudes.size(); ++i) out.amplitudes[i] = amplitudes[i] / n;
  out.normalized = true;
  return out;
}

StateVector StateVector::basis(std::size_t dim, std::size_t k) {
  if (dim == 0 || k >= dim) raise(ErrorCode::InvalidArgument, "basis index out of range");
  StateVector out;
  out.amplitudes.assign(dim, 0.0);
  out.amplitudes[k] = 1.0;
  out.normalized = true;
  return out;
}

StateVector StateVector::raw(std::vector<Complex> amplitudes) {
  StateVector out;
  out.amplitudes = std::move(amplitudes);
  out.normalized = false;
  return out;
}

Complex inner(const StateVector& a, const StateVector& b) {
  return vector_dot(a.amplitudes, b.amplitudes);
}

void PTParams::validate() {
  if (!std::isfinite(r) || !std::isfinite(s) || !std::isfinite(theta) || !std::isfinite(hbar)) {
    raise(ErrorCode::InvalidArgument, "PTParams: non-finite parameter");
  }
  if (s <= 0.0) raise(ErrorCode::InvalidArgument, "PTParams: s must be positive");
  if (hbar <= 0.0) raise(ErrorCode::InvalidArgument, "PTParams: hbar must be positive");
  theta = std::fmod(theta, 2.0 * M_PI);
  if (theta < 0.0) theta += 2.0 * M_PI;
}

double PTParams::discriminant() const {
  const double rs = r * std::sin(theta);
  return s * s - rs * rs;
}

bool PTParams::at_exceptional_point() const {
  return std::abs(discriminant()) < 1e-8 * s * s;
}

CMatrix pt_hamiltonian(const PTParams& p) {
  PTParams q = p;
  q.validate();
  const Complex diag(q.r * std::cos(q.theta), -q.r * std::sin(q.theta));
  CMatrix h(2);
  h(0, 0) = diag;
  h(0, 1) = q.s;
  h(1, 0) = q.s;
  h(1, 1) = std::conj(diag);
  return h;
}

SpectralData spectral(const CMatrix& h, double hbar) {
  if (hbar <= 0.0) raise(ErrorCode::InvalidArgument, "spectral: hbar must be positive");
  if (!h.is_finite()) raise(ErrorCode::NonFinite, "spectral: input contains NaN/Inf");
  if (h.dim() < 2) raise(ErrorCode::InvalidArgument, "spectral: need dim >= 2");

  const SoftEig se = soft_eig(h);
  std::size_t lo = 0, hi = 1;
  const double gap = max_pairwise_gap(se.values, &lo, &hi);
  if (!se.diagonalizable) {
    if (gap < 1e-8 * h.frobenius_norm()) {
      raise(ErrorCode::ExceptionalPoint,
            "spectral: coalescing eigenvalues on a non-diagonalizable input");
    }
    raise(ErrorCode::NotDiagonalizable, "spectral: input not diagonalizable");
  }

  SpectralData out;
  out.e_minus = se.values[lo];
  out.e_plus = se.values[hi];
  out.omega = gap;
  out.unbroken = true;
  for (const Complex& v : se.values) {
    if (std::abs(v.imag()) > 1e-10) out.unbroken = false;
  }
  return out;
}

CMatrix metric_operator(const CMatrix& h) {
  if (!h.is_finite()) raise(ErrorCode::NonFinite, "metric_operator: input contains NaN/Inf");
  const std::size_t n = h.dim();
  const SoftEig se = soft_eig(h);
  if (!se.diagonalizable) {
    std::size_t lo = 0, hi = 1;
    const double gap = n >= 2 ? max_pairwise_gap(se.values, &lo, &hi) : 0.0;
    if (gap < 1e-8 * h.frobenius_norm()) {
      raise(ErrorCode::ExceptionalPoint, "metric_operator: exceptional point");
    }
    raise(ErrorCode::NotDiagonalizable, "metric_operator: input not diagonalizable");
  }
  for (const Complex& v : se.values) {
    if (std::abs(v.imag()) > 1e-10) {
      raise(ErrorCode::BrokenPhase, "metric_operator: spectrum is not real (broken phase)");
    }
  }

  // Left eigenvectors are the rows of V^{-1}; eta = sum_k |phi_k><phi_k|
  // over the normalized left eigenvectors, then scaled to tr(eta) = dim.
  const CMatrix w = inverse(se.vectors);
  CMatrix eta(n);
  for (std::size_t k = 0; k < n; ++k) {
    double row_norm_sq = 0.0;
    for (std::size_t j = 0; j < n; ++j) row_norm_sq += std::norm(w(k, j));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        eta(i, j) += std::conj(w(k, i)) * w(k, j) / row_norm_sq;
  }
  const double tr = eta.trace().real();
  eta *= Complex(static_cast<double>(n) / tr, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Complex v = 0.5 * (eta(i, j) + std::conj(eta(j, i)));
      eta(i, j) = v;
      eta(j, i) = std::conj(v);
    }
  return eta;
}

PseudoHermitianCheck is_pseudo_hermitian(const CMatrix& h, const CMatrix& eta) {
  if (!h.is_finite() || !eta.is_finite()) {
    raise(ErrorCode::NonFinite, "is_pseudo_hermitian: input contains NaN/Inf");
  }
  if (h.dim() != eta.dim()) {
    raise(ErrorCode::InvalidArgument, "is_pseudo_hermitian: dimension mismatch");
  }
  const CMatrix defect = h.adjoint() * eta - eta * h;
  const double residual = defect.frobenius_norm();
  const double tol = 1e-9 * (1.0 + h.frobenius_norm() * eta.frobenius_norm());
  return {residual <= tol, residual};
}

StateVector evolve(const CMatrix& h, double t, const StateVector& psi, double hbar) {
  require_state(psi, "evolve");
  if (!h.is_finite()) raise(ErrorCode::NonFinite, "evolve: Hamiltonian contains NaN/Inf");
  if (h.dim() != psi.dim()) raise(ErrorCode::InvalidArgument, "evolve: dimension mismatch");
  if (t < 0.0) raise(ErrorCode::InvalidArgument, "evolve: t must be non-negative");
  if (hbar <= 0.0) raise(ErrorCode::InvalidArgument, "evolve: hbar must be positive");

  const CMatrix propagator = expm(Complex(0.0, -t / hbar) * h);
  StateVector out;
  out.amplitudes = propagator.apply(psi.amplitudes);
  out.normalized = false;
  for (const Complex& a : out.amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      raise(ErrorCode::NonFinite, "evolve: evolution overflowed");
    }
  }
  return out;
}

double evolution_norm(const CMatrix& h, double t, const StateVector& psi, double hbar) {
  return evolve(h, t, psi, hbar).norm();
}

StateVector haar_state(std::size_t dim, std::uint64_t seed, std::uint64_t sample_index) {
  StateVector out;
  out.amplitudes = haar_amplitudes(dim, seed, sample_index);
  out.normalized = true;
  return out;
}

bool state_is_unit(const StateVector& psi) { return std::abs(psi.norm() - 1.0) <= kNormTol; }

}  // namespace ptsim

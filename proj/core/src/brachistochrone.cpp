#include "ptsim/brachistochrone.hpp"

#include <cmath>

#include "ptsim/error.hpp"
#include "ptsim/linalg.hpp"

namespace ptsim {

namespace {

void require_unit(const StateVector& psi, const char* who) {
  if (psi.dim() == 0) raise(ErrorCode::InvalidArgument, std::string(who) + ": empty state");
  if (!state_is_unit(psi)) {
    raise(ErrorCode::NotNormalized, std::string(who) + ": state is not normalized");
  }
}

// Propagator in the eigenbasis of h: orders of magnitude cheaper than a
// fresh expm per scan point, and exact for diagonalizable h.
class SpectralPropagator {
 public:
  SpectralPropagator(const CMatrix& h, const StateVector& psi, double hbar)
      : decomp_(eig(h)), hbar_(hbar) {
    const CMatrix sol = solve(decomp_.eigenvectors, column(psi.amplitudes));
    coeffs_.resize(psi.dim());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = sol(i, 0);
  }

  std::vector<Complex> state(double t) const {
    const std::size_t n = coeffs_.size();
    std::vector<Complex> mixed(n);
    for (std::size_t k = 0; k < n; ++k) {
      mixed[k] = std::exp(Complex(0.0, -t / hbar_) * decomp_.eigenvalues[k]) * coeffs_[k];
    }
    return decomp_.eigenvectors.apply(mixed);
  }

  // d/dt of the state: multiply each mode by -i lambda / hbar.
  std::vector<Complex> state_derivative(double t) const {
    const std::size_t n = coeffs_.size();
    std::vector<Complex> mixed(n);
    for (std::size_t k = 0; k < n; ++k) {
      const Complex mode = std::exp(Complex(0.0, -t / hbar_) * decomp_.eigenvalues[k]);
      mixed[k] = Complex(0.0, -1.0 / hbar_) * decomp_.eigenvalues[k] * mode * coeffs_[k];
    }
    return decomp_.eigenvectors.apply(mixed);
  }

 private:
  static CMatrix column(const std::vector<Complex>& v) {
    CMatrix m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  EigenDecomposition decomp_;
  double hbar_;
  std::vector<Complex> coeffs_;
};

}  // namespace

TimeBound hermitian_min_time(const StateVector& psi_i, const StateVector& psi_f,
                             double omega, double hbar) {
  require_unit(psi_i, "hermitian_min_time");
  require_unit(psi_f, "hermitian_min_time");
  if (psi_i.dim() != psi_f.dim()) {
    raise(ErrorCode::InvalidArgument, "hermitian_min_time: dimension mismatch");
  }
  if (!(omega > 0.0)) raise(ErrorCode::NonPositiveOmega, "hermitian_min_time: omega must be positive");
  if (!(hbar > 0.0)) raise(ErrorCode::InvalidArgument, "hermitian_min_time: hbar must be positive");

  double overlap = std::abs(inner(psi_i, psi_f));
  if (overlap > 1.0 + 1e-12) {
    raise(ErrorCode::NotNormalized, "hermitian_min_time: overlap exceeds 1");
  }
  overlap = std::min(overlap, 1.0);
  return {2.0 * hbar / omega * std::acos(overlap), omega, overlap};
}

CMatrix optimal_hermitian(const StateVector& psi_i, const StateVector& psi_f,
                          double omega, double hbar) {
  require_unit(psi_i, "optimal_hermitian");
  require_unit(psi_f, "optimal_hermitian");
  if (psi_i.dim() != psi_f.dim()) {
    raise(ErrorCode::InvalidArgument, "optimal_hermitian: dimension mismatch");
  }
  if (!(omega > 0.0)) raise(ErrorCode::NonPositiveOmega, "optimal_hermitian: omega must be positive");
  if (!(hbar > 0.0)) raise(ErrorCode::InvalidArgument, "optimal_hermitian: hbar must be positive");

  const std::size_t n = psi_i.dim();
  const Complex c = inner(psi_i, psi_f);
  const double overlap = std::abs(c);
  if (overlap >= 1.0 - 1e-12) return CMatrix::zero(n);  // degenerate-states convention

  // Phase-align psi_f so <psi_i|psi_f'> is real non-negative, then
  // orthonormalize: e2 spans the rotation plane together with e1 = psi_i.
  const Complex phase = overlap > 0.0 ? std::conj(c) / overlap : Complex(1.0);
  std::vector<Complex> e2(n);
  for (std::size_t i = 0; i < n; ++i) {
    e2[i] = phase * psi_f.amplitudes[i] - overlap * psi_i.amplitudes[i];
  }
  const double w = vector_norm(e2);
  for (Complex& x : e2) x /= w;

  // H = (omega/2) sigma_y in the (e1, e2) plane: generates the geodesic
  // rotation e1 -> cos(phi) e1 + sin(phi) e2 with phi = omega t / (2 hbar).
  CMatrix h(n);
  const Complex half(0.0, 0.5 * omega);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      h(a, b) = -half * psi_i.amplitudes[a] * std::conj(e2[b]) +
                half * e2[a] * std::conj(psi_i.amplitudes[b]);
    }
  return h;
}

std::optional<double> flip_time(const CMatrix& h, const StateVector& psi_i,
                                const StateVector& psi_f, double t_max, double hbar) {
  require_unit(psi_i, "flip_time");
  require_unit(psi_f, "flip_time");
  if (h.dim() != psi_i.dim() || h.dim() != psi_f.dim()) {
    raise(ErrorCode::InvalidArgument, "flip_time: dimension mismatch");
  }
  if (!(t_max > 0.0)) raise(ErrorCode::InvalidArgument, "flip_time: t_max must be positive");
  if (!(hbar > 0.0)) raise(ErrorCode::InvalidArgument, "flip_time: hbar must be positive");
  if (std::abs(std::abs(inner(psi_i, psi_f)) - 1.0) <= 1e-12) {
    return std::nullopt;  // identical states: the t -> 0 edge, excluded by convention
  }

  const SpectralPropagator prop(h, psi_i, hbar);
  const auto& target = psi_f.amplitudes;

  const auto overlap = [&](double t) {
    const std::vector<Complex> u = prop.state(t);
    return std::abs(vector_dot(target, u)) / vector_norm(u);
  };
  // d/dt of the squared normalized overlap |<f|u>|^2 / <u|u>.
  const auto slope = [&](double t) {
    const std::vector<Complex> u = prop.state(t);
    const std::vector<Complex> du = prop.state_derivative(t);
    const Complex p = vector_dot(target, u);
    const Complex dp = vector_dot(target, du);
    const double nn = vector_norm(u);
    const double n2 = nn * nn;
    const double dn2 = 2.0 * vector_dot(u, du).real();
    return (2.0 * (std::conj(p) * dp).real() * n2 - std::norm(p) * dn2) / (n2 * n2);
  };

  constexpr int kScanPoints = 10000;
  constexpr double kCoarse = 1.0 - 1e-6;
  constexpr double kAccept = 1.0 - 1e-10;
  const double step = t_max / kScanPoints;

  std::vector<double> values(kScanPoints + 1, 0.0);
  for (int k = 1; k <= kScanPoints; ++k) values[k] = overlap(k * step);

  int k = 1;
  while (k <= kScanPoints) {
    if (values[k] < kCoarse) {
      ++k;
      continue;
    }
    // Bracket the local maximum of this run.
    int j = k;
    while (j < kScanPoints && values[j + 1] > values[j]) ++j;
    double lo = (k - 1) * step;
    double hi = std::min(j + 1, kScanPoints) * step;

    double t_star;
    if (slope(lo) > 0.0 && slope(hi) < 0.0) {
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) > 0.0 ? lo : hi) = mid;
      }
      t_star = 0.5 * (lo + hi);
    } else {
      // Plateau or boundary peak: golden-section fallback.
      const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
      double a = lo, b = hi;
      double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
      double f1 = overlap(x1), f2 = overlap(x2);
      while (b - a > 1e-12) {
        if (f1 < f2) {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + inv_phi * (b - a);
          f2 = overlap(x2);
        } else {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - inv_phi * (b - a);
          f1 = overlap(x1);
        }
      }
      t_star = 0.5 * (a + b);
    }
    if (t_star > 0.0 && t_star <= t_max && overlap(t_star) >= kAccept) return t_star;

    // Peak too shallow; skip past this run.
    k = j + 1;
    while (k <= kScanPoints && values[k] >= kCoarse) ++k;
  }
  return std::nullopt;
}

std::optional<double> pt_flip_time(const PTParams& p, const StateVector& psi_i,
                                   const StateVector& psi_f, double t_max) {
  PTParams q = p;
  q.validate();
  if (q.at_exceptional_point()) {
    raise(ErrorCode::ExceptionalPoint, "pt_flip_time: parameters inside the exceptional-point band");
  }
  const CMatrix h = pt_hamiltonian(q);
  spectral(h, q.hbar);  // propagates ExceptionalPoint / NotDiagonalizable
  return flip_time(h, psi_i, psi_f, t_max, q.hbar);
}

}  // namespace ptsim

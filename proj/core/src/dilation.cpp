#include "ptsim/dilation.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "ptsim/error.hpp"
#include "ptsim/linalg.hpp"

namespace ptsim {

namespace {

constexpr double kZeroBranchTol = 1e-14;

}  // namespace

std::string format_complex_entry(Complex v) {
  // canonicalize -0.0 so dumps are reproducible byte-for-byte
  const double re = v.real() + 0.0;
  const double im = v.imag() + 0.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", re);
  std::string out(buf);
  out += std::signbit(im) ? '-' : '+';
  std::snprintf(buf, sizeof(buf), "%.17g", std::abs(im));
  out += buf;
  out += 'j';
  return out;
}

Contraction contraction_from_evolution(const CMatrix& h, double t, double hbar) {
  if (!h.is_finite()) raise(ErrorCode::NonFinite, "contraction_from_evolution: NaN/Inf input");
  if (t < 0.0) raise(ErrorCode::InvalidArgument, "contraction_from_evolution: t must be >= 0");
  if (hbar <= 0.0) raise(ErrorCode::InvalidArgument, "contraction_from_evolution: hbar must be positive");

  const CMatrix propagator = expm(Complex(0.0, -t / hbar) * h);
  if (!propagator.is_finite()) {
    raise(ErrorCode::NonFinite, "contraction_from_evolution: propagator overflowed");
  }
  double gamma = 0.0;
  for (std::size_t i = 0; i < h.dim(); ++i) gamma = std::hypot(gamma, std::abs(propagator(i, 0)));
  const double sigma = operator_norm(propagator);

  Contraction out;
  out.gamma = gamma;
  out.alpha = gamma / sigma;
  out.k = (1.0 / sigma) * propagator;
  return out;
}

CMatrix sznagy_dilation(const CMatrix& k) {
  if (!k.is_finite()) raise(ErrorCode::NonFinite, "sznagy_dilation: NaN/Inf input");
  const std::size_t n = k.dim();

  // One shared singular decomposition K = W diag(sigma) V^H supplies both
  // defect square roots, sqrt(I - K K^dag) = W C W^H and
  // sqrt(I - K^dag K) = V C V^H with C = diag(sqrt(1 - sigma^2)); the
  // diagonal intertwining makes the assembled block matrix unitary to
  // roundoff even at sigma_max = 1.
  const Svd sv = svd(k);
  if (sv.singular_values[0] > 1.0 + 1e-12) {
    raise(ErrorCode::NotContraction, "sznagy_dilation: sigma_max exceeds 1 + 1e-12");
  }
  std::vector<double> defect(n);
  for (std::size_t i = 0; i < n; ++i) {
    defect[i] = std::sqrt(std::max(0.0, 1.0 - sv.singular_values[i] * sv.singular_values[i]));
  }
  const auto outer_scaled = [&](const CMatrix& basis) {
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Complex acc = 0.0;
        for (std::size_t c = 0; c < n; ++c) acc += basis(i, c) * defect[c] * std::conj(basis(j, c));
        m(i, j) = acc;
      }
    return m;
  };
  const CMatrix left_root = outer_scaled(sv.u);    // sqrt(I - K K^dag)
  const CMatrix right_root = outer_scaled(sv.v);   // sqrt(I - K^dag K)

  CMatrix u(2 * n);
  u.set_block(0, 0, k);
  u.set_block(0, n, left_root);
  u.set_block(n, 0, right_root);
  u.set_block(n, n, Complex(-1.0) * k.adjoint());

  const CMatrix defect_mat = u.adjoint() * u - CMatrix::identity(2 * n);
  if (defect_mat.frobenius_norm() > 1e-10) {
    raise(ErrorCode::ConvergenceFailure, "sznagy_dilation: unitarity residual above 1e-10");
  }
  return u;
}

DilationResult dilate_evolution(const CMatrix& h, double t, double hbar) {
  const Contraction contraction = contraction_from_evolution(h, t, hbar);
  const std::size_t n = h.dim();

  DilationResult d;
  d.h = h;
  d.k = contraction.k;
  d.alpha = contraction.alpha;
  d.gamma = contraction.gamma;
  d.beta = std::sqrt(std::max(0.0, 1.0 - d.alpha * d.alpha));
  d.t = t;
  d.hbar = hbar;
  d.u = sznagy_dilation(d.k);
  d.kraus.m0 = d.u.block(0, 0, n);
  d.kraus.m1 = d.u.block(n, 0, n);

  // Verify the two-branch decomposition on the reference input
  // |0_e> (x) |0_a>: U maps it to alpha (e^{-iHt}/gamma)|0_e>(x)|0_a>
  // + beta |psi_e>(x)|1_a>.
  std::vector<Complex> reference(2 * n, 0.0);
  reference[0] = 1.0;
  const std::vector<Complex> image = d.u.apply(reference);

  const StateVector evolved = evolve(h, t, StateVector::basis(n, 0), hbar);
  std::vector<Complex> expected(2 * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    expected[i] = d.alpha / d.gamma * evolved.amplitudes[i];
  }
  std::vector<Complex> failure(n);
  for (std::size_t i = 0; i < n; ++i) failure[i] = d.kraus.m1(i, 0);
  const double failure_norm = vector_norm(failure);
  if (failure_norm >= kZeroBranchTol) {
    for (std::size_t i = 0; i < n; ++i) {
      expected[n + i] = d.beta * failure[i] / failure_norm;
    }
  }
  double residual = 0.0;
  for (std::size_t i = 0; i < 2 * n; ++i) residual += std::norm(image[i] - expected[i]);
  residual = std::sqrt(residual);
  if (residual > 1e-10) {
    raise(ErrorCode::ConvergenceFailure, "dilate_evolution: branch decomposition residual above 1e-10");
  }
  return d;
}

KrausPair kraus_subdynamics(const DilationResult& d) {
  const std::size_t n = d.u.dim() / 2;
  return {d.u.block(0, 0, n), d.u.block(n, 0, n)};
}

PostSelectOutcome postselect(const DilationResult& d, const StateVector& psi) {
  if (!state_is_unit(psi)) raise(ErrorCode::NotNormalized, "postselect: state is not normalized");
  const std::size_t n = d.k.dim();
  if (psi.dim() != n) raise(ErrorCode::InvalidArgument, "postselect: dimension mismatch");

  const std::vector<Complex> success = d.kraus.m0.apply(psi.amplitudes);
  const std::vector<Complex> failure = d.kraus.m1.apply(psi.amplitudes);
  const double sn = vector_norm(success);
  const double fn = vector_norm(failure);

  PostSelectOutcome out;
  out.success_prob = std::min(1.0, sn * sn);
  if (sn >= kZeroBranchTol) out.success_state = StateVector::raw(success).unit();
  if (fn >= kZeroBranchTol) out.failure_state = StateVector::raw(failure).unit();
  return out;
}

RestrictionScan subdynamics_restriction_scan(const CMatrix& h, double t, double hbar,
                                             int num_samples, std::uint64_t seed) {
  if (num_samples < 1) {
    raise(ErrorCode::InvalidArgument, "subdynamics_restriction_scan: num_samples must be >= 1");
  }
  const DilationResult d = dilate_evolution(h, t, hbar);
  const CMatrix propagator = expm(Complex(0.0, -t / hbar) * h);
  const std::size_t n = h.dim();

  int matching = 0;
  double min_fidelity = 1.0;
  for (int i = 0; i < num_samples; ++i) {
    const StateVector psi = haar_state(n, seed, static_cast<std::uint64_t>(i));
    const StateVector target = StateVector::raw(propagator.apply(psi.amplitudes)).unit();
    // Fidelity of Lambda(|psi><psi|) with the pure target:
    // F = sum_k |<target|M_k psi>|^2.
    const Complex a0 = vector_dot(target.amplitudes, d.kraus.m0.apply(psi.amplitudes));
    const Complex a1 = vector_dot(target.amplitudes, d.kraus.m1.apply(psi.amplitudes));
    const double fidelity = std::norm(a0) + std::norm(a1);
    if (fidelity >= 1.0 - 1e-9) ++matching;
    min_fidelity = std::min(min_fidelity, fidelity);
  }
  return {static_cast<double>(matching) / num_samples, min_fidelity, num_samples};
}

void dump_matrix(std::ostream& os, const CMatrix& m, std::string_view kind) {
  os << "# dim=" << m.dim() << " kind=" << kind << "\n";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j > 0) os << ' ';
      os << format_complex_entry(m(i, j));
    }
    os << "\n";
  }
}

}  // namespace ptsim

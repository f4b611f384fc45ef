#include "ptsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ptsim/error.hpp"

namespace ptsim {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_finite(const CMatrix& a, const char* who) {
  if (!a.is_finite()) raise(ErrorCode::NonFinite, std::string(who) + ": input contains NaN/Inf");
  if (a.dim() == 0) raise(ErrorCode::InvalidArgument, std::string(who) + ": empty matrix");
}

// Unitary 2x2 rotation G = [[c, s], [-conj(s), c]] with real c >= 0 and
// G [a, b]^T = [r, 0]^T.
struct Givens {
  double c = 1.0;
  Complex s = 0.0;
};

Givens make_givens(Complex a, Complex b) {
  const double aa = std::abs(a), ab = std::abs(b);
  if (ab == 0.0) return {1.0, 0.0};
  if (aa == 0.0) return {0.0, std::conj(b) / ab};
  const double d = std::hypot(aa, ab);
  const Complex phase = a / aa;
  return {aa / d, phase * std::conj(b) / d};
}

// Rows i and k over columns [c0, c1): [row_i; row_k] <- G [row_i; row_k].
void rotate_rows(CMatrix& m, std::size_t i, std::size_t k, const Givens& g,
                 std::size_t c0, std::size_t c1) {
  for (std::size_t j = c0; j < c1; ++j) {
    const Complex x = m(i, j), y = m(k, j);
    m(i, j) = g.c * x + g.s * y;
    m(k, j) = -std::conj(g.s) * x + g.c * y;
  }
}

// Columns i and k over rows [r0, r1): [col_i, col_k] <- [col_i, col_k] G^H.
void rotate_cols(CMatrix& m, std::size_t i, std::size_t k, const Givens& g,
                 std::size_t r0, std::size_t r1) {
  for (std::size_t r = r0; r < r1; ++r) {
    const Complex x = m(r, i), y = m(r, k);
    m(r, i) = g.c * x + std::conj(g.s) * y;
    m(r, k) = -g.s * x + g.c * y;
  }
}

// Eigenvalue of [[a, b], [c, d]] closest to d (the Wilkinson shift).
Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
  const Complex half_diff = 0.5 * (a - d);
  const Complex disc = std::sqrt(half_diff * half_diff + b * c);
  const Complex l1 = d + half_diff + disc;
  const Complex l2 = d + half_diff - disc;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

struct EigCore {
  std::vector<Complex> values;
  CMatrix vectors;
  double residual;
  double condition;
};

}  // namespace

SchurDecomposition schur(const CMatrix& a) {
  require_finite(a, "schur");
  const std::size_t n = a.dim();
  CMatrix t = a;
  CMatrix q = CMatrix::identity(n);
  if (n == 1) return {t, q};

  // Hessenberg reduction by Givens similarity transforms.
  for (std::size_t k = 0; k + 2 < n; ++k) {
    for (std::size_t i = n - 1; i >= k + 2; --i) {
      if (t(i, k) == Complex(0.0)) continue;
      const Givens g = make_givens(t(i - 1, k), t(i, k));
      rotate_rows(t, i - 1, i, g, k, n);
      t(i, k) = 0.0;
      rotate_cols(t, i - 1, i, g, 0, n);
      rotate_cols(q, i - 1, i, g, 0, n);
    }
  }

  const double scale = std::max(t.frobenius_norm(), 1e-300);

  // Shifted QR on the active trailing block [lo, hi].
  std::size_t hi = n - 1;
  int iters_this_block = 0;
  while (hi > 0) {
    std::size_t lo = hi;
    while (lo > 0) {
      const double sub = std::abs(t(lo, lo - 1));
      double thresh = kEps * (std::abs(t(lo - 1, lo - 1)) + std::abs(t(lo, lo)));
      if (thresh == 0.0) thresh = kEps * scale;
      if (sub <= thresh) {
        t(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      --hi;
      iters_this_block = 0;
      continue;
    }
    if (++iters_this_block > 40 * static_cast<int>(n)) {
      raise(ErrorCode::ConvergenceFailure, "schur: QR iteration did not converge");
    }

    Complex shift = wilkinson_shift(t(hi - 1, hi - 1), t(hi - 1, hi), t(hi, hi - 1), t(hi, hi));
    if (iters_this_block % 12 == 0) {
      shift = t(hi, hi) + Complex(0.75 * std::abs(t(hi, hi - 1)), 0.0);
    }

    // Explicit single-shift step: QR factor (T - shift I) by Givens, then RQ.
    for (std::size_t i = lo; i <= hi; ++i) t(i, i) -= shift;
    std::vector<Givens> rotations;
    rotations.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) {
      const Givens g = make_givens(t(i, i), t(i + 1, i));
      rotate_rows(t, i, i + 1, g, i, n);
      t(i + 1, i) = 0.0;
      rotations.push_back(g);
    }
    for (std::size_t i = lo; i < hi; ++i) {
      const Givens& g = rotations[i - lo];
      rotate_cols(t, i, i + 1, g, 0, std::min(i + 2, hi) + 1);
      rotate_cols(q, i, i + 1, g, 0, n);
    }
    for (std::size_t i = lo; i <= hi; ++i) t(i, i) += shift;
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) t(i, j) = 0.0;
  return {t, q};
}

void hermitian_eigen(const CMatrix& a, std::vector<double>& values, CMatrix& vectors) {
  require_finite(a, "hermitian_eigen");
  const std::size_t n = a.dim();
  CMatrix sym(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      sym(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));

  const SchurDecomposition sd = schur(sym);
  // T is diagonal (to roundoff) for a Hermitian input, so Q's columns are
  // the orthonormal eigenvectors.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = sd.t(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&raw](std::size_t x, std::size_t y) { return raw[x] < raw[y]; });

  values.resize(n);
  vectors = CMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = raw[order[k]];
    for (std::size_t i = 0; i < n; ++i) vectors(i, k) = sd.q(i, order[k]);
  }
}

namespace {

EigCore eig_core(const CMatrix& a) {
  const std::size_t n = a.dim();
  const SchurDecomposition sd = schur(a);
  const double tnorm = std::max(sd.t.frobenius_norm(), 1e-300);
  const double smallnum = kEps * tnorm;

  // Eigenvectors of T by back-substitution, then rotate by Q.
  CMatrix vecs(n);
  std::vector<Complex> values(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex lambda = sd.t(k, k);
    values[k] = lambda;
    std::vector<Complex> y(n, 0.0);
    y[k] = 1.0;
    for (std::size_t jj = k; jj-- > 0;) {
      Complex sum = 0.0;
      for (std::size_t m = jj + 1; m <= k; ++m) sum += sd.t(jj, m) * y[m];
      Complex den = sd.t(jj, jj) - lambda;
      if (std::abs(den) < smallnum) den = smallnum;  // near-defective guard
      y[jj] = -sum / den;
    }
    std::vector<Complex> v = sd.q.apply(y);
    const double nv = vector_norm(v);
    for (std::size_t i = 0; i < n; ++i) vecs(i, k) = v[i] / nv;
  }

  // Deterministic order: by real part, then imaginary part.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&values](std::size_t x, std::size_t y) {
    if (values[x].real() != values[y].real()) return values[x].real() < values[y].real();
    return values[x].imag() < values[y].imag();
  });
  EigCore out;
  out.values.resize(n);
  out.vectors = CMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = values[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = vecs(i, order[k]);
  }

  double residual = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Complex> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = out.vectors(i, k);
    std::vector<Complex> av = a.apply(v);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(av[i] - out.values[k] * v[i]);
    residual = std::max(residual, std::sqrt(acc));
  }
  out.residual = residual;

  // 2-norm condition of the eigenvector matrix from the spectrum of V^H V.
  std::vector<double> gram_vals;
  CMatrix gram_vecs;
  hermitian_eigen(out.vectors.adjoint() * out.vectors, gram_vals, gram_vecs);
  const double lmax = gram_vals.back();
  const double lmin = gram_vals.front();
  out.condition = (lmin <= 0.0) ? std::numeric_limits<double>::infinity()
                                : std::sqrt(lmax / lmin);
  return out;
}

}  // namespace

EigenDecomposition eig(const CMatrix& a) {
  require_finite(a, "eig");
  EigCore core = eig_core(a);
  if (core.condition > 1e8) {
    raise(ErrorCode::NotDiagonalizable,
          "eig: eigenvector matrix condition estimate exceeds 1e8");
  }
  EigenDecomposition out;
  out.eigenvalues = std::move(core.values);
  out.eigenvectors = std::move(core.vectors);
  out.residual = core.residual;
  out.condition_estimate = core.condition;
  return out;
}

CMatrix expm(const CMatrix& a) {
  require_finite(a, "expm");
  const std::size_t n = a.dim();

  // Fixed (13,13) Pade kernel; scale so the 1-norm is below theta_13.
  constexpr double kTheta13 = 5.371920351148152;
  static const double kCoeff[14] = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};

  int squarings = 0;
  CMatrix b = a;
  const double norm1 = a.one_norm();
  if (norm1 > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
    b *= Complex(std::ldexp(1.0, -squarings), 0.0);
  }

  const CMatrix ident = CMatrix::identity(n);
  const CMatrix b2 = b * b;
  const CMatrix b4 = b2 * b2;
  const CMatrix b6 = b4 * b2;

  CMatrix w = b6 * (kCoeff[13] * b6 + kCoeff[11] * b4 + kCoeff[9] * b2);
  w += kCoeff[7] * b6 + kCoeff[5] * b4 + kCoeff[3] * b2 + kCoeff[1] * ident;
  const CMatrix odd = b * w;

  CMatrix even = b6 * (kCoeff[12] * b6 + kCoeff[10] * b4 + kCoeff[8] * b2);
  even += kCoeff[6] * b6 + kCoeff[4] * b4 + kCoeff[2] * b2 + kCoeff[0] * ident;

  CMatrix f = solve(even - odd, even + odd);
  for (int i = 0; i < squarings; ++i) f = f * f;
  return f;
}

CMatrix solve(const CMatrix& a, const CMatrix& rhs) {
  require_finite(a, "solve");
  const std::size_t n = a.dim();
  if (rhs.dim() != n) raise(ErrorCode::InvalidArgument, "solve: dimension mismatch");
  CMatrix lu = a;
  CMatrix x = rhs;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double cand = std::abs(lu(i, k));
      if (cand > best) {
        best = cand;
        pivot = i;
      }
    }
    if (best == 0.0) raise(ErrorCode::SingularMatrix, "solve: singular matrix");
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(lu(k, j), lu(pivot, j));
        std::swap(x(k, j), x(pivot, j));
      }
    }
    const Complex inv_piv = 1.0 / lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex factor = lu(i, k) * inv_piv;
      if (factor == Complex(0.0)) continue;
      lu(i, k) = factor;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= factor * lu(k, j);
      for (std::size_t j = 0; j < n; ++j) x(i, j) -= factor * x(k, j);
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = x(k, j);
      for (std::size_t m = k + 1; m < n; ++m) acc -= lu(k, m) * x(m, j);
      x(k, j) = acc / lu(k, k);
    }
  }
  return x;
}

CMatrix inverse(const CMatrix& a) { return solve(a, CMatrix::identity(a.dim())); }

double operator_norm(const CMatrix& a) {
  require_finite(a, "operator_norm");
  std::vector<double> vals;
  CMatrix vecs;
  hermitian_eigen(a.adjoint() * a, vals, vecs);
  return std::sqrt(std::max(0.0, vals.back()));
}

CMatrix sqrtm_psd(const CMatrix& a) {
  require_finite(a, "sqrtm_psd");
  const std::size_t n = a.dim();
  const double fro = a.frobenius_norm();
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) asym += std::norm(a(i, j) - std::conj(a(j, i)));
  if (std::sqrt(asym) > 1e-10 * (1.0 + fro)) {
    raise(ErrorCode::NotHermitian, "sqrtm_psd: input is not Hermitian within 1e-10");
  }

  std::vector<double> vals;
  CMatrix vecs;
  hermitian_eigen(a, vals, vecs);
  if (vals.front() < -1e-10) {
    raise(ErrorCode::NotPsd, "sqrtm_psd: eigenvalue below -1e-10");
  }
  CMatrix root(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double lam = std::max(0.0, vals[k]);
        acc += vecs(i, k) * std::sqrt(lam) * std::conj(vecs(j, k));
      }
      root(i, j) = acc;
    }
  // Hermitize against roundoff.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Complex v = 0.5 * (root(i, j) + std::conj(root(j, i)));
      root(i, j) = v;
      root(j, i) = std::conj(v);
    }
  return root;
}

UnitaryLog logm_unitary(const CMatrix& u) {
  require_finite(u, "logm_unitary");
  const std::size_t n = u.dim();
  const CMatrix defect = u.adjoint() * u - CMatrix::identity(n);
  if (defect.frobenius_norm() > 1e-10) {
    raise(ErrorCode::NotUnitary, "logm_unitary: input is not unitary within 1e-10");
  }

  const SchurDecomposition sd = schur(u);
  std::vector<double> phases(n);
  for (std::size_t k = 0; k < n; ++k) {
    double phi = std::arg(sd.t(k, k));
    if (phi <= -M_PI) phi = M_PI;  // principal branch (-pi, pi]
    phases[k] = phi;
  }

  // G = Q diag(-phi) Q^H, so that expm(-iG) = Q diag(e^{i phi}) Q^H = U.
  CMatrix gen(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += sd.q(i, k) * (-phases[k]) * std::conj(sd.q(j, k));
      gen(i, j) = acc;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Complex v = 0.5 * (gen(i, j) + std::conj(gen(j, i)));
      gen(i, j) = v;
      gen(j, i) = std::conj(v);
    }

  std::sort(phases.begin(), phases.end());
  return {std::move(phases), std::move(gen)};
}

Svd svd(const CMatrix& a) {
  require_finite(a, "svd");
  const std::size_t n = a.dim();
  std::vector<double> vals;
  CMatrix right;
  hermitian_eigen(a.adjoint() * a, vals, right);

  Svd out;
  out.v = CMatrix(n);
  out.u = CMatrix(n);
  out.singular_values.resize(n);
  // hermitian_eigen sorts ascending; singular values go descending.
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = n - 1 - k;
    out.singular_values[k] = std::sqrt(std::max(0.0, vals[src]));
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = right(i, src);
  }

  const double smax = out.singular_values[0];
  const double tiny = 1e-13 * std::max(1.0, smax);
  std::vector<std::vector<Complex>> cols;
  std::vector<std::size_t> missing;
  for (std::size_t k = 0; k < n; ++k) {
    if (out.singular_values[k] > tiny) {
      std::vector<Complex> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = out.v(i, k);
      std::vector<Complex> u = a.apply(v);
      const double nu = vector_norm(u);
      for (Complex& x : u) x /= nu;
      cols.push_back(std::move(u));
    } else {
      cols.emplace_back();  // fill below
      missing.push_back(k);
    }
  }
  // Complete null directions by Gram-Schmidt over the standard basis.
  for (std::size_t slot : missing) {
    for (std::size_t cand = 0; cand < n; ++cand) {
      std::vector<Complex> u(n, 0.0);
      u[cand] = 1.0;
      for (const auto& c : cols) {
        if (c.empty()) continue;
        const Complex proj = vector_dot(c, u);
        for (std::size_t i = 0; i < n; ++i) u[i] -= proj * c[i];
      }
      const double nu = vector_norm(u);
      if (nu > 0.3) {
        for (Complex& x : u) x /= nu;
        cols[slot] = std::move(u);
        break;
      }
    }
    if (cols[slot].empty()) raise(ErrorCode::ConvergenceFailure, "svd: completion failed");
  }
  // One modified Gram-Schmidt pass tightens orthonormality.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t m = 0; m < k; ++m) {
      const Complex proj = vector_dot(cols[m], cols[k]);
      for (std::size_t i = 0; i < n; ++i) cols[k][i] -= proj * cols[m][i];
    }
    const double nu = vector_norm(cols[k]);
    for (Complex& x : cols[k]) x /= nu;
    for (std::size_t i = 0; i < n; ++i) out.u(i, k) = cols[k][i];
  }
  return out;
}

}  // namespace ptsim

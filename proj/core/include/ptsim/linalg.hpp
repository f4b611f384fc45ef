#pragma once

#include <vector>

#include "ptsim/cmatrix.hpp"

namespace ptsim {

/// Matrix exponential by scaling-and-squaring with a fixed (13,13) Pade
/// kernel. One code path for every input; relative error <= 1e-12 for
/// norms up to ~10, which covers everything this library produces.
CMatrix expm(const CMatrix& a);

/// Schur form a = q t q^H with t upper triangular and q unitary,
/// computed by Givens-based Hessenberg reduction followed by shifted
/// (Wilkinson) QR iteration. Valid for general complex matrices.
struct SchurDecomposition {
  CMatrix t;
  CMatrix q;
};
SchurDecomposition schur(const CMatrix& a);

struct EigenDecomposition {
  std::vector<Complex> eigenvalues;  // sorted by (real, imaginary) ascending
  CMatrix eigenvectors;              // unit-norm columns, same order
  double residual = 0.0;             // max_k ||A v_k - lambda_k v_k||
  double condition_estimate = 0.0;   // 2-norm condition of the eigenvector matrix
};

/// Full eigendecomposition for diagonalizable inputs. Throws
/// NotDiagonalizable when the eigenvector-matrix condition estimate
/// exceeds 1e8 (how exceptional points surface numerically).
EigenDecomposition eig(const CMatrix& a);

/// Largest singular value, via the spectrum of a^H a.
double operator_norm(const CMatrix& a);

/// Hermitian PSD square root. Eigenvalues in [-1e-10, 0) are clamped to
/// zero; anything below -1e-10 is NotPsd.
CMatrix sqrtm_psd(const CMatrix& a);

struct UnitaryLog {
  std::vector<double> eigenphases;  // principal branch in (-pi, pi], ascending
  CMatrix generator;                // Hermitian G with expm(-iG) = U
};

/// Principal logarithm of a unitary (within 1e-10).
UnitaryLog logm_unitary(const CMatrix& u);

struct Svd {
  CMatrix u;                             // a = u diag(s) v^H
  CMatrix v;
  std::vector<double> singular_values;   // descending
};

/// Singular value decomposition of a square matrix, via the eigensystem
/// of a^H a with orthonormal completion of the null directions.
Svd svd(const CMatrix& a);

/// Solves a x = rhs by partially pivoted LU.
CMatrix solve(const CMatrix& a, const CMatrix& rhs);
CMatrix inverse(const CMatrix& a);

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian
/// matrix; the input is symmetrized before factorization.
void hermitian_eigen(const CMatrix& a, std::vector<double>& values, CMatrix& vectors);

}  // namespace ptsim

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "ptsim/error.hpp"
#include "ptsim/linalg.hpp"
#include "testutil.hpp"

using namespace ptsim;
using testutil::matrix_diff;
using testutil::random_hermitian;
using testutil::random_matrix;
using testutil::random_unitary;

namespace {
const Complex kI(0.0, 1.0);
}

TEST_CASE("expm: fixed small cases") {
  CHECK(matrix_diff(expm(CMatrix::zero(2)), CMatrix::identity(2)) < 1e-15);

  const CMatrix diag{{Complex(0.3, -0.7), 0.0}, {0.0, Complex(-1.1, 0.4)}};
  CMatrix expected(2);
  expected(0, 0) = std::exp(Complex(0.3, -0.7));
  expected(1, 1) = std::exp(Complex(-1.1, 0.4));
  CHECK(matrix_diff(expm(diag), expected) < 1e-14);

  // e^{-i (pi/2) sigma_x} = -i sigma_x
  const CMatrix sigma_x{{0.0, 1.0}, {1.0, 0.0}};
  const CMatrix rotated = expm(Complex(0.0, -M_PI / 2) * sigma_x);
  const CMatrix target{{0.0, -kI}, {-kI, 0.0}};
  CHECK(matrix_diff(rotated, target) < 1e-14);
}

TEST_CASE("expm: rejects non-finite input") {
  CMatrix bad(2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_WITH_AS(expm(bad), doctest::Contains("NaN"), Error);
}

TEST_CASE("expm: agrees with the scaled Taylor oracle") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = (seed % 2 == 0) ? 2 : 4;
    CMatrix a = random_matrix(n, 1000 + seed, 1.0);
    const double norm = operator_norm(a);
    a *= Complex(5.0 * ((seed % 5 + 1) / 5.0) / norm);  // spread norms over (0, 5]
    const CMatrix viaLibrary = expm(a);
    const CMatrix viaOracle = oracles::taylor_expm(a);
    const double scale = std::max(1.0, viaOracle.frobenius_norm());
    CHECK(matrix_diff(viaLibrary, viaOracle) / scale < 1e-12);
  }
}

TEST_CASE("expm: inverse property expm(A) expm(-A) = I") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    CMatrix a = random_matrix(3, 2000 + seed, 1.0);
    a *= Complex(5.0 / operator_norm(a) * ((seed % 4 + 1) / 4.0));
    const CMatrix product = expm(a) * expm(Complex(-1.0) * a);
    CHECK(matrix_diff(product, CMatrix::identity(3)) < 1e-11);
  }
}

TEST_CASE("eig: Pauli-X spectrum") {
  const CMatrix sigma_x{{0.0, 1.0}, {1.0, 0.0}};
  const EigenDecomposition d = eig(sigma_x);
  CHECK(std::abs(d.eigenvalues[0] - Complex(-1.0)) < 1e-12);
  CHECK(std::abs(d.eigenvalues[1] - Complex(1.0)) < 1e-12);
  CHECK(d.residual < 1e-12);
}

TEST_CASE("eig: triangular input keeps its diagonal") {
  const CMatrix t{{Complex(1.0, 2.0), 5.0, -3.0},
                  {0.0, Complex(-2.0, 0.5), 7.0},
                  {0.0, 0.0, Complex(0.25, -1.0)}};
  const EigenDecomposition d = eig(t);
  // sorted by (re, im): -2+0.5i, 0.25-i, 1+2i
  CHECK(std::abs(d.eigenvalues[0] - Complex(-2.0, 0.5)) < 1e-12);
  CHECK(std::abs(d.eigenvalues[1] - Complex(0.25, -1.0)) < 1e-12);
  CHECK(std::abs(d.eigenvalues[2] - Complex(1.0, 2.0)) < 1e-12);
}

TEST_CASE("eig: residual and reconstruction on random 4x4 inputs") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const CMatrix a = random_matrix(4, 3000 + seed, 1.0);
    const EigenDecomposition d = eig(a);
    const double norm_a = a.frobenius_norm();
    CHECK(d.residual <= 1e-10 * (1.0 + norm_a));

    // independent residual oracle ||A v - lambda v||
    for (std::size_t k = 0; k < 4; ++k) {
      std::vector<Complex> v(4);
      for (std::size_t i = 0; i < 4; ++i) v[i] = d.eigenvectors(i, k);
      CHECK(std::abs(vector_norm(v) - 1.0) < 1e-12);
      const std::vector<Complex> av = a.apply(v);
      double acc = 0.0;
      for (std::size_t i = 0; i < 4; ++i) acc += std::norm(av[i] - d.eigenvalues[k] * v[i]);
      CHECK(std::sqrt(acc) < 1e-10 * (1.0 + norm_a));
    }

    // V diag(lambda) V^{-1} = A
    CMatrix lambda(4);
    for (std::size_t k = 0; k < 4; ++k) lambda(k, k) = d.eigenvalues[k];
    const CMatrix rebuilt = d.eigenvectors * lambda * inverse(d.eigenvectors);
    CHECK(matrix_diff(rebuilt, a) < 1e-9 * (1.0 + norm_a));
  }
}

TEST_CASE("eig: Jordan block is rejected as NotDiagonalizable") {
  const CMatrix jordan{{2.0, 1.0}, {0.0, 2.0}};
  CHECK_THROWS_AS(eig(jordan), Error);
  try {
    eig(jordan);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDiagonalizable);
  }
}

TEST_CASE("operator_norm: fixed values and the power-iteration oracle") {
  CHECK(operator_norm(CMatrix::identity(3)) == doctest::Approx(1.0).epsilon(1e-12));
  const CMatrix diag{{3.0, 0.0}, {0.0, Complex(0.0, -4.0)}};
  CHECK(operator_norm(diag) == doctest::Approx(4.0).epsilon(1e-12));

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const CMatrix a = random_matrix(2, 4000 + seed, 1.3);
    const double via_library = operator_norm(a);
    const double via_oracle = oracles::power_iteration_norm(a);
    CHECK(std::abs(via_library - via_oracle) < 1e-10 * (1.0 + via_oracle));
  }
}

TEST_CASE("operator_norm of unitaries is 1") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CMatrix u = random_unitary(3, 5000 + seed, 1.5);
    CHECK(std::abs(operator_norm(u) - 1.0) < 1e-10);
  }
}

TEST_CASE("sqrtm_psd: fixed cases") {
  CHECK(matrix_diff(sqrtm_psd(CMatrix::identity(2)), CMatrix::identity(2)) < 1e-13);
  const CMatrix diag{{4.0, 0.0}, {0.0, 9.0}};
  const CMatrix root{{2.0, 0.0}, {0.0, 3.0}};
  CHECK(matrix_diff(sqrtm_psd(diag), root) < 1e-12);
}

TEST_CASE("sqrtm_psd: squaring oracle on random PSD inputs") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const CMatrix b = random_matrix(3, 6000 + seed, 1.0);
    const CMatrix psd = b * b.adjoint();
    const CMatrix root = sqrtm_psd(psd);
    CHECK(matrix_diff(root * root, psd) < 1e-10 * (1.0 + psd.frobenius_norm()));
    CHECK(matrix_diff(root, root.adjoint()) < 1e-12 * (1.0 + root.frobenius_norm()));
  }
}

TEST_CASE("sqrtm_psd: idempotent-consistency sqrtm(B^2) = B") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const CMatrix b0 = random_matrix(3, 7000 + seed, 1.0);
    const CMatrix psd = b0 * b0.adjoint();  // Hermitian PSD
    const CMatrix b = sqrtm_psd(psd);
    CHECK(matrix_diff(sqrtm_psd(b * b), b) < 1e-9 * (1.0 + b.frobenius_norm()));
  }
}

TEST_CASE("sqrtm_psd: rejections") {
  const CMatrix indefinite{{1.0, 0.0}, {0.0, -1.0}};
  try {
    sqrtm_psd(indefinite);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPsd);
  }
  const CMatrix skew{{1.0, Complex(0.0, 1e-6)}, {0.0, 1.0}};
  try {
    sqrtm_psd(skew);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}

TEST_CASE("logm_unitary: fixed cases") {
  const UnitaryLog idlog = logm_unitary(CMatrix::identity(3));
  for (double phi : idlog.eigenphases) CHECK(std::abs(phi) < 1e-12);
  CHECK(idlog.generator.frobenius_norm() < 1e-12);

  const double phi1 = 0.7, phi2 = -2.3;
  CMatrix diag(2);
  diag(0, 0) = std::exp(kI * phi1);
  diag(1, 1) = std::exp(kI * phi2);
  const UnitaryLog lg = logm_unitary(diag);
  CHECK(lg.eigenphases[0] == doctest::Approx(phi2).epsilon(1e-12));
  CHECK(lg.eigenphases[1] == doctest::Approx(phi1).epsilon(1e-12));
}

TEST_CASE("logm_unitary: round trip recovers Hermitian spectra") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CMatrix h = random_hermitian(3, 8000 + seed, 1.0);
    h *= Complex(3.0 / operator_norm(h) * ((seed % 3 + 1) / 3.0));  // ||H|| < pi
    const CMatrix u = expm(Complex(0, -1) * h);
    const UnitaryLog lg = logm_unitary(u);
    CHECK(matrix_diff(expm(Complex(0, -1) * lg.generator), u) < 1e-9);
    CHECK(matrix_diff(lg.generator, h) < 1e-9 * (1.0 + h.frobenius_norm()));
  }
}

TEST_CASE("logm_unitary: rejects non-unitary input") {
  const CMatrix stretched{{2.0, 0.0}, {0.0, 1.0}};
  try {
    logm_unitary(stretched);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotUnitary);
  }
}

TEST_CASE("svd: reconstruction and orthonormal factors") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const std::size_t n = 2 + seed % 3;
    const CMatrix a = random_matrix(n, 9000 + seed, 1.0);
    const Svd sv = svd(a);
    CHECK(matrix_diff(sv.u.adjoint() * sv.u, CMatrix::identity(n)) < 1e-12);
    CHECK(matrix_diff(sv.v.adjoint() * sv.v, CMatrix::identity(n)) < 1e-12);
    CMatrix sigma(n);
    for (std::size_t i = 0; i < n; ++i) sigma(i, i) = sv.singular_values[i];
    CHECK(matrix_diff(sv.u * sigma * sv.v.adjoint(), a) < 1e-11 * (1.0 + a.frobenius_norm()));
    for (std::size_t i = 0; i + 1 < n; ++i) CHECK(sv.singular_values[i] >= sv.singular_values[i + 1]);
  }
  // rank-deficient corner
  const Svd sv0 = svd(CMatrix::zero(3));
  CHECK(matrix_diff(sv0.u.adjoint() * sv0.u, CMatrix::identity(3)) < 1e-13);
  CHECK(sv0.singular_values[0] == 0.0);
}

TEST_CASE("solve/inverse round trip") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CMatrix a = random_matrix(4, 9900 + seed, 1.0);
    const CMatrix identity_check = a * inverse(a);
    CHECK(matrix_diff(identity_check, CMatrix::identity(4)) < 1e-10);
  }
  try {
    inverse(CMatrix::zero(2));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularMatrix);
  }
}

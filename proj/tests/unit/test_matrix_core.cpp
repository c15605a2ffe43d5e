#include <doctest.h>

#include <cmath>

#include "qcorr/matrix.hpp"
#include "qcorr/rng.hpp"

using namespace qcorr;

namespace {

Mat4 random_hermitian(Rng& rng) {
  Mat4 a;
  for (std::size_t i = 0; i < 4; ++i) {
    a(i, i) = rng.normal();
    for (std::size_t j = i + 1; j < 4; ++j) {
      const Complex v(rng.normal(), rng.normal());
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
  return a;
}

Mat4 reconstruct(const EigenSystem<4>& sys) {
  Mat4 rec;
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        rec(i, j) += sys.eigenvalues[k] * sys.eigenvectors(i, k) * std::conj(sys.eigenvectors(j, k));
  return rec;
}

}  // namespace

TEST_SUITE("matrix_core") {

TEST_CASE("tensor of identities and Pauli pairs") {
  CHECK(frobenius_distance(tensor(Mat2::identity(), Mat2::identity()), Mat4::identity()) == 0.0);

  const Mat4 xx = tensor(sigma_x(), sigma_x());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(xx(i, j) == (i + j == 3 ? Complex(1.0) : Complex(0.0)));

  const Mat4 zz = tensor(sigma_z(), sigma_z());
  const double diag[4] = {1.0, -1.0, -1.0, 1.0};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(zz(i, i) == Complex(diag[i]));
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) CHECK(zz(i, j) == Complex(0.0));
  }
}

TEST_CASE("tensor mixed-product property on random unitaries") {
  Rng rng(101);
  for (int t = 0; t < 50; ++t) {
    const Mat2 a = random_su2(rng), b = random_su2(rng);
    const Mat2 c = random_su2(rng), d = random_su2(rng);
    CHECK(frobenius_distance(tensor(a, b) * tensor(c, d), tensor(a * c, b * d)) < 1e-12);
  }
}

TEST_CASE("partial trace factorizes product operators") {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    Mat2 a, b;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        a(i, j) = Complex(rng.normal(), rng.normal());
        b(i, j) = Complex(rng.normal(), rng.normal());
      }
    const Mat4 prod = tensor(a, b);
    const Mat2 left = partial_trace(prod, Subsystem::B);
    const Mat2 expected = a * b.trace();
    CHECK(frobenius_distance(left, expected) < 1e-12);
    CHECK(std::abs(prod.trace() - partial_trace(prod, Subsystem::A).trace()) < 1e-12);
  }
}

TEST_CASE("partial trace of maximally entangled and maximally mixed states") {
  Mat4 bell;
  // (|00> + |11>)/sqrt 2 projector
  const std::size_t idx[2] = {0, 3};
  for (std::size_t i : idx)
    for (std::size_t j : idx) bell(i, j) = 0.5;
  const Mat2 marginal = partial_trace(bell, Subsystem::A);
  CHECK(frobenius_distance(marginal, Complex(0.5) * Mat2::identity()) < 1e-15);

  const Mat4 mixed = Complex(0.25) * Mat4::identity();
  CHECK(frobenius_distance(partial_trace(mixed, Subsystem::A), Complex(0.5) * Mat2::identity()) <
        1e-15);
}

TEST_CASE("hermitian_eigen on fixed spectra") {
  Mat4 d;
  d(0, 0) = 1.0;
  const auto sys = hermitian_eigen(d);
  CHECK(sys.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (int i = 1; i < 4; ++i) CHECK(std::abs(sys.eigenvalues[i]) < 1e-14);

  const auto sx = hermitian_eigen(sigma_x());
  CHECK(sx.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sx.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-14));

  // Spectrum {1/3, 1/3, 1/3, 0}
  Mat4 w;
  w(0, 0) = w(1, 1) = w(2, 2) = 1.0 / 3.0;
  const auto ws = hermitian_eigen(w);
  for (int i = 0; i < 3; ++i) CHECK(ws.eigenvalues[i] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(std::abs(ws.eigenvalues[3]) < 1e-14);
}

TEST_CASE("hermitian_eigen reconstruction and orthonormality on random input") {
  Rng rng(202);
  double worst_recon = 0.0, worst_ortho = 0.0, worst_order = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Mat4 a = random_hermitian(rng);
    const auto sys = hermitian_eigen(a);
    worst_recon = std::max(worst_recon, frobenius_distance(a, reconstruct(sys)));
    worst_ortho = std::max(worst_ortho, unitarity_defect(sys.eigenvectors));
    for (int i = 0; i + 1 < 4; ++i)
      worst_order = std::max(worst_order, sys.eigenvalues[i + 1] - sys.eigenvalues[i]);
  }
  CHECK(worst_recon < 1e-10);
  CHECK(worst_ortho < 1e-10);
  CHECK(worst_order <= 0.0);  // descending
}

TEST_CASE("hermitian_eigen rejects non-Hermitian input") {
  Mat4 m;
  m(0, 1) = 1.0;  // missing conjugate partner
  CHECK_THROWS_AS(hermitian_eigen(m), std::invalid_argument);
}

TEST_CASE("adjoint involution, trace, distance") {
  Rng rng(3);
  Mat4 m;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
  CHECK(frobenius_distance(m.adjoint().adjoint(), m) == 0.0);
  CHECK(Mat4::identity().trace() == Complex(4.0));
  CHECK(frobenius_distance(m, m) == 0.0);
}

TEST_CASE("eigenvalue clipping policy") {
  CHECK(clip_eigenvalue(0.5) == 0.5);
  CHECK(clip_eigenvalue(-1e-10) == 0.0);
  CHECK(clip_eigenvalue(5e-13) == 0.0);
  CHECK_THROWS_AS(clip_eigenvalue(-1e-8), std::invalid_argument);
}

}  // TEST_SUITE

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

// Dense complex linear algebra for the 2x2 and 4x4 matrices used throughout:
// arithmetic, Kronecker product, partial trace and a cyclic Jacobi
// eigensolver for Hermitian input. Basis ordering for 4x4 operators is
// {|00>,|01>,|10>,|11>} with qubit A as the left tensor factor.
namespace qcorr {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Numerical policy shared by all modules.
inline constexpr double kHermiticityTol = 1e-9;
inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kEigenNegativeTol = -1e-9;
inline constexpr double kEigenZeroTol = 1e-12;

template <std::size_t N>
class ComplexMatrix {
  static_assert(N == 2 || N == 4, "only 2x2 and 4x4 matrices are supported");

 public:
  static constexpr std::size_t dim = N;

  constexpr ComplexMatrix() = default;

  constexpr Complex& operator()(std::size_t row, std::size_t col) {
    return entries_[row * N + col];
  }
  constexpr const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * N + col];
  }

  static ComplexMatrix zero() { return ComplexMatrix{}; }

  static ComplexMatrix identity() {
    ComplexMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix out;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) out(i, j) = std::conj((*this)(j, i));
    return out;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs) {
    for (std::size_t k = 0; k < N * N; ++k) entries_[k] += rhs.entries_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& rhs) {
    for (std::size_t k = 0; k < N * N; ++k) entries_[k] -= rhs.entries_[k];
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) {
    for (auto& e : entries_) e *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out;
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t k = 0; k < N; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < N; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

 private:
  std::array<Complex, N * N> entries_{};
};

using Mat2 = ComplexMatrix<2>;
using Mat4 = ComplexMatrix<4>;

inline Mat2 sigma_x() {
  Mat2 m;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

inline Mat2 sigma_y() {
  Mat2 m;
  m(0, 1) = Complex(0.0, -1.0);
  m(1, 0) = Complex(0.0, 1.0);
  return m;
}

inline Mat2 sigma_z() {
  Mat2 m;
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

// Kronecker product with qubit A as the left factor: index (a,b) -> 2a+b.
inline Mat4 tensor(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

enum class Subsystem { A, B };

// Traces out the indicated subsystem; trace is preserved.
inline Mat2 partial_trace(const Mat4& m, Subsystem traced) {
  Mat2 out;
  if (traced == Subsystem::B) {
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t ap = 0; ap < 2; ++ap)
        out(a, ap) = m(2 * a + 0, 2 * ap + 0) + m(2 * a + 1, 2 * ap + 1);
  } else {
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t bp = 0; bp < 2; ++bp)
        out(b, bp) = m(0 + b, 0 + bp) + m(2 + b, 2 + bp);
  }
  return out;
}

template <std::size_t N>
double frobenius_distance(const ComplexMatrix<N>& a, const ComplexMatrix<N>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) sum += std::norm(a(i, j) - b(i, j));
  return std::sqrt(sum);
}

template <std::size_t N>
double max_abs_entry(const ComplexMatrix<N>& m) {
  double mx = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) mx = std::max(mx, std::abs(m(i, j)));
  return mx;
}

// max |A - A^dag| over entries.
template <std::size_t N>
double hermiticity_defect(const ComplexMatrix<N>& m) {
  double mx = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      mx = std::max(mx, std::abs(m(i, j) - std::conj(m(j, i))));
  return mx;
}

// max |U^dag U - I| over entries.
template <std::size_t N>
double unitarity_defect(const ComplexMatrix<N>& u) {
  const ComplexMatrix<N> g = u.adjoint() * u;
  double mx = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      mx = std::max(mx, std::abs(g(i, j) - (i == j ? Complex(1.0) : Complex(0.0))));
  return mx;
}

template <std::size_t N>
struct EigenSystem {
  std::array<double, N> eigenvalues{};  // descending
  ComplexMatrix<N> eigenvectors;        // orthonormal columns, matching order
};

// Cyclic Jacobi diagonalization of a Hermitian matrix. Robust and exact to
// machine precision at these dimensions; throws if the input deviates from
// Hermiticity by more than kHermiticityTol.
template <std::size_t N>
EigenSystem<N> hermitian_eigen(const ComplexMatrix<N>& input) {
  if (hermiticity_defect(input) > kHermiticityTol) {
    throw std::invalid_argument("hermitian_eigen: input is not Hermitian within tolerance");
  }

  ComplexMatrix<N> a = input;
  // Symmetrize to kill round-off level asymmetry before iterating.
  for (std::size_t i = 0; i < N; ++i) {
    a(i, i) = Complex(a(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < N; ++j) {
      const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }

  ComplexMatrix<N> v = ComplexMatrix<N>::identity();
  double scale = max_abs_entry(a);
  if (scale == 0.0) scale = 1.0;

  constexpr int kMaxSweeps = 60;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= 1e-15 * scale) break;

    for (std::size_t p = 0; p < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const Complex apq = a(p, q);
        const double apq_abs = std::abs(apq);
        if (apq_abs <= 1e-300) continue;

        // Unitary 2x2 rotation J with J(p,p)=c, J(p,q)=-conj(s), J(q,p)=s,
        // J(q,q)=c zeroing out a(p,q) under a <- J^dag a J.
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const Complex phase = apq / apq_abs;
        const double tau = (aqq - app) / (2.0 * apq_abs);
        const double t = (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const Complex s = phase * (t * c);

        for (std::size_t k = 0; k < N; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp + std::conj(s) * akq;
          a(k, q) = -s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + s * aqk;
          a(q, k) = -std::conj(s) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = Complex(a(p, p).real(), 0.0);
        a(q, q) = Complex(a(q, q).real(), 0.0);

        for (std::size_t k = 0; k < N; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp + std::conj(s) * vkq;
          v(k, q) = -s * vkp + c * vkq;
        }
      }
    }
  }

  EigenSystem<N> sys;
  std::array<std::size_t, N> order{};
  for (std::size_t i = 0; i < N; ++i) order[i] = i;
  std::array<double, N> vals{};
  for (std::size_t i = 0; i < N; ++i) vals[i] = a(i, i).real();
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      if (vals[order[j]] > vals[order[i]]) std::swap(order[i], order[j]);

  for (std::size_t i = 0; i < N; ++i) {
    sys.eigenvalues[i] = vals[order[i]];
    for (std::size_t k = 0; k < N; ++k) sys.eigenvectors(k, i) = v(k, order[i]);
  }
  return sys;
}

// Clips spectral noise on density-operator eigenvalues: values in
// [kEigenNegativeTol, kEigenZeroTol) become 0, anything more negative is a
// genuine positivity violation.
inline double clip_eigenvalue(double lambda) {
  if (lambda < kEigenNegativeTol) {
    throw std::invalid_argument("eigenvalue below positivity tolerance: " + std::to_string(lambda));
  }
  return lambda < kEigenZeroTol ? 0.0 : lambda;
}

}  // namespace qcorr

#pragma once
// Fixed-size complex linear algebra for two-qubit problems: 2x2 and 4x4 value
// types with row-major storage, plus the Kronecker product that embeds
// single-atom operators into the joint Hilbert space.
//
// Basis convention used throughout the library: the joint basis is ordered
// (|00>, |01>, |10>, |11>), first slot atom 1, second slot atom 2, with |0>
// the single-atom ground state and |1> the excited state. Index arithmetic:
// |ab> sits at row 2a + b.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace entlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2 = 1.41421356237309504880;

// ---------------------------------------------------------------------------
// 2x2 complex matrix (single-atom operators).
// ---------------------------------------------------------------------------
struct Mat2 {
  std::array<cplx, 4> a{};

  static Mat2 zero() { return {}; }
  static Mat2 identity() {
    Mat2 m;
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    return m;
  }

  cplx& operator()(int i, int j) { return a[static_cast<size_t>(2 * i + j)]; }
  const cplx& operator()(int i, int j) const {
    return a[static_cast<size_t>(2 * i + j)];
  }
};

// ---------------------------------------------------------------------------
// 4x4 complex matrix (two-atom operators and density matrices).
// ---------------------------------------------------------------------------
struct Mat4 {
  std::array<cplx, 16> a{};

  static Mat4 zero() { return {}; }
  static Mat4 identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
  }
  // diag(d0, d1, d2, d3)
  static Mat4 diag(double d0, double d1, double d2, double d3) {
    Mat4 m;
    m(0, 0) = d0;
    m(1, 1) = d1;
    m(2, 2) = d2;
    m(3, 3) = d3;
    return m;
  }

  cplx& operator()(int i, int j) { return a[static_cast<size_t>(4 * i + j)]; }
  const cplx& operator()(int i, int j) const {
    return a[static_cast<size_t>(4 * i + j)];
  }

  Mat4& operator+=(const Mat4& o) {
    for (size_t k = 0; k < 16; ++k) a[k] += o.a[k];
    return *this;
  }
  Mat4& operator-=(const Mat4& o) {
    for (size_t k = 0; k < 16; ++k) a[k] -= o.a[k];
    return *this;
  }
  Mat4& operator*=(cplx s) {
    for (size_t k = 0; k < 16; ++k) a[k] *= s;
    return *this;
  }

  Mat4 adjoint() const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
  }
  Mat4 transpose() const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r(i, j) = (*this)(j, i);
    return r;
  }
  Mat4 conjugate() const {
    Mat4 r;
    for (size_t k = 0; k < 16; ++k) r.a[k] = std::conj(a[k]);
    return r;
  }

  cplx trace() const { return a[0] + a[5] + a[10] + a[15]; }

  double max_abs() const {
    double m = 0.0;
    for (const cplx& z : a) m = std::max(m, std::abs(z));
    return m;
  }
  double fro_norm() const {
    double s = 0.0;
    for (const cplx& z : a) s += std::norm(z);
    return std::sqrt(s);
  }
  // Largest |A(i,j) - conj(A(j,i))| — zero iff Hermitian.
  double hermiticity_error() const {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j)
        m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
  }
};

inline Mat4 operator+(Mat4 x, const Mat4& y) { return x += y; }
inline Mat4 operator-(Mat4 x, const Mat4& y) { return x -= y; }
inline Mat4 operator-(const Mat4& x) {
  Mat4 r;
  for (size_t k = 0; k < 16; ++k) r.a[k] = -x.a[k];
  return r;
}
inline Mat4 operator*(cplx s, Mat4 x) { return x *= s; }
inline Mat4 operator*(Mat4 x, cplx s) { return x *= s; }
inline Mat4 operator*(double s, Mat4 x) { return x *= cplx(s, 0.0); }
inline Mat4 operator*(Mat4 x, double s) { return x *= cplx(s, 0.0); }

inline Mat4 operator*(const Mat4& x, const Mat4& y) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const cplx xik = x(i, k);
      if (xik == cplx{}) continue;
      for (int j = 0; j < 4; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

inline Mat4 commutator(const Mat4& x, const Mat4& y) { return x * y - y * x; }
inline Mat4 anticommutator(const Mat4& x, const Mat4& y) {
  return x * y + y * x;
}

// Hilbert-Schmidt inner product tr(A^dagger B).
inline cplx hs_inner(const Mat4& x, const Mat4& y) {
  cplx s{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += std::conj(x(i, j)) * y(i, j);
  return s;
}

// Kronecker product: first factor acts on atom 1, second on atom 2, matching
// the |ab> = row 2a+b basis ordering.
inline Mat4 kron(const Mat2& x, const Mat2& y) {
  Mat4 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          r(2 * i + k, 2 * j + l) = x(i, j) * y(k, l);
  return r;
}

inline double max_abs_diff(const Mat4& x, const Mat4& y) {
  double m = 0.0;
  for (size_t k = 0; k < 16; ++k) m = std::max(m, std::abs(x.a[k] - y.a[k]));
  return m;
}

}  // namespace entlab

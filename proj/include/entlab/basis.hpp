#pragma once
// Single-atom operators, their two-atom embeddings, and the 15-component
// coherence-vector parametrization of a two-qubit density matrix.
//
// Conventions (fixed across the library):
//   * |0> = ground, |1> = excited; sigma_z = diag(1, -1) in that order.
//   * sigma_minus = |0><1| (lowering), sigma_plus = |1><0| (raising); these
//     are matrix units, so sigma_x = sigma_minus + sigma_plus.
//   * Joint basis order (|00>, |01>, |10>, |11>).
//   * rho = I/4 + sum_i m_i Omega_i with m_i = tr(Omega_i rho), where the
//     Omega_i are the 15 traceless Hermitian operators below, orthonormal in
//     the Hilbert-Schmidt inner product.
//
// The Omega ordering groups the components by how they transform under the
// free decay: the four "pairing" components coupling |00>,|11> and |01>,|10>
// off-diagonals first, then the eight single-excitation coherences (which
// decay to zero autonomously), then the three population-like components that
// carry the stationary structure.

#include <array>
#include <cmath>
#include <string_view>

#include "entlab/errors.hpp"
#include "entlab/mat4.hpp"

namespace entlab {

// ---------------------------------------------------------------------------
// Single-atom operators.
// ---------------------------------------------------------------------------
inline Mat2 id2() { return Mat2::identity(); }
inline Mat2 sigma_x() {
  Mat2 m;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}
inline Mat2 sigma_y() {
  Mat2 m;
  m(0, 1) = cplx(0.0, -1.0);
  m(1, 0) = cplx(0.0, 1.0);
  return m;
}
inline Mat2 sigma_z() {
  Mat2 m;
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}
inline Mat2 sigma_minus() {  // |0><1|
  Mat2 m;
  m(0, 1) = 1.0;
  return m;
}
inline Mat2 sigma_plus() {  // |1><0|
  Mat2 m;
  m(1, 0) = 1.0;
  return m;
}

// Embeddings into the joint space.
inline Mat4 on_atom1(const Mat2& op) { return kron(op, id2()); }
inline Mat4 on_atom2(const Mat2& op) { return kron(id2(), op); }

// ---------------------------------------------------------------------------
// Coherence-vector component indices.
// ---------------------------------------------------------------------------
enum CoherenceIndex : int {
  M14X = 0,   // (|00><11| + h.c.) / sqrt2
  M14Y = 1,   // (-i|00><11| + h.c.) / sqrt2
  M23X = 2,   // (|01><10| + h.c.) / sqrt2
  M23Y = 3,   // (-i|01><10| + h.c.) / sqrt2
  MX0 = 4,    // sigma_x (x) id / 2
  MY0 = 5,    // sigma_y (x) id / 2
  M0X = 6,    // id (x) sigma_x / 2
  M0Y = 7,    // id (x) sigma_y / 2
  MXZ = 8,    // sigma_x (x) sigma_z / 2
  MZX = 9,    // sigma_z (x) sigma_x / 2
  MYZ = 10,   // sigma_y (x) sigma_z / 2
  MZY = 11,   // sigma_z (x) sigma_y / 2
  M14Z = 12,  // diag(1, 0, 0, -1) / sqrt2
  M23Z = 13,  // diag(0, 1, -1, 0) / sqrt2
  MZZ = 14,   // sigma_z (x) sigma_z / 2
};

inline constexpr std::array<std::string_view, 15> kCoherenceNames = {
    "m14x", "m14y", "m23x", "m23y", "mx0", "my0", "m0x", "m0y",
    "mxz",  "mzx",  "myz",  "mzy",  "m14z", "m23z", "mzz"};

// The 15 orthonormal traceless Hermitian basis operators.
inline const std::array<Mat4, 15>& omega_basis() {
  static const std::array<Mat4, 15> basis = [] {
    std::array<Mat4, 15> b{};
    const double rs2 = 1.0 / kSqrt2;

    b[M14X](0, 3) = rs2;
    b[M14X](3, 0) = rs2;
    b[M14Y](0, 3) = cplx(0.0, -rs2);
    b[M14Y](3, 0) = cplx(0.0, rs2);
    b[M23X](1, 2) = rs2;
    b[M23X](2, 1) = rs2;
    b[M23Y](1, 2) = cplx(0.0, -rs2);
    b[M23Y](2, 1) = cplx(0.0, rs2);

    b[MX0] = 0.5 * kron(sigma_x(), id2());
    b[MY0] = 0.5 * kron(sigma_y(), id2());
    b[M0X] = 0.5 * kron(id2(), sigma_x());
    b[M0Y] = 0.5 * kron(id2(), sigma_y());
    b[MXZ] = 0.5 * kron(sigma_x(), sigma_z());
    b[MZX] = 0.5 * kron(sigma_z(), sigma_x());
    b[MYZ] = 0.5 * kron(sigma_y(), sigma_z());
    b[MZY] = 0.5 * kron(sigma_z(), sigma_y());

    b[M14Z] = rs2 * Mat4::diag(1.0, 0.0, 0.0, -1.0);
    b[M23Z] = rs2 * Mat4::diag(0.0, 1.0, -1.0, 0.0);
    b[MZZ] = 0.5 * kron(sigma_z(), sigma_z());
    return b;
  }();
  return basis;
}

// ---------------------------------------------------------------------------
// Coherence vector.
// ---------------------------------------------------------------------------
struct CoherenceVector {
  std::array<double, 15> m{};

  double& operator[](int i) { return m[static_cast<size_t>(i)]; }
  const double& operator[](int i) const { return m[static_cast<size_t>(i)]; }

  CoherenceVector& operator+=(const CoherenceVector& o) {
    for (size_t k = 0; k < 15; ++k) m[k] += o.m[k];
    return *this;
  }
  CoherenceVector& operator-=(const CoherenceVector& o) {
    for (size_t k = 0; k < 15; ++k) m[k] -= o.m[k];
    return *this;
  }
  CoherenceVector& operator*=(double s) {
    for (double& x : m) x *= s;
    return *this;
  }

  double norm2() const {
    double s = 0.0;
    for (double x : m) s += x * x;
    return s;
  }
  double max_abs() const {
    double r = 0.0;
    for (double x : m) r = std::max(r, std::abs(x));
    return r;
  }
};

inline CoherenceVector operator+(CoherenceVector x, const CoherenceVector& y) {
  return x += y;
}
inline CoherenceVector operator-(CoherenceVector x, const CoherenceVector& y) {
  return x -= y;
}
inline CoherenceVector operator*(double s, CoherenceVector x) { return x *= s; }
inline CoherenceVector operator*(CoherenceVector x, double s) { return x *= s; }

// Project a density matrix onto the basis: m_i = tr(Omega_i rho). Each trace
// must be real for Hermitian input; a residue above `tol` is rejected.
inline CoherenceVector rho_to_coherence(const Mat4& rho, double tol = 1e-9) {
  CoherenceVector m;
  const auto& basis = omega_basis();
  for (int i = 0; i < 15; ++i) {
    const cplx t = (basis[static_cast<size_t>(i)] * rho).trace();
    if (std::abs(t.imag()) > tol)
      throw NonHermitianInput("coherence projection: non-real component trace");
    m[i] = t.real();
  }
  return m;
}

// Reconstruct rho = I/4 + sum_i m_i Omega_i.
inline Mat4 coherence_to_rho(const CoherenceVector& m) {
  Mat4 rho = 0.25 * Mat4::identity();
  const auto& basis = omega_basis();
  for (int i = 0; i < 15; ++i) rho += m[i] * basis[static_cast<size_t>(i)];
  return rho;
}

// Purity tr(rho^2) = 1/4 + |m|^2 in this parametrization.
inline double purity_of(const CoherenceVector& m) { return 0.25 + m.norm2(); }

// Symmetry weight kappa: the conserved combination under collective decay,
// kappa = (m_zz + sqrt2 * m23x) / 2 + 3/4. It equals 1 minus the population of
// the antisymmetric singlet state, so kappa = 1 on the ground state and 0 on
// the singlet.
inline double kappa_of(const CoherenceVector& m) {
  return 0.5 * (m[MZZ] + kSqrt2 * m[M23X]) + 0.75;
}
inline double kappa_of(const Mat4& rho) { return kappa_of(rho_to_coherence(rho)); }

}  // namespace entlab

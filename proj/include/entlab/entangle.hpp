#pragma once
// Entanglement and overlap measures for two-qubit states: the concurrence
// (general spin-flip construction and the closed form for X-shaped states)
// and the overlap fidelity against pure targets.

#include <algorithm>
#include <array>
#include <cmath>

#include "entlab/basis.hpp"
#include "entlab/density.hpp"
#include "entlab/eig.hpp"
#include "entlab/errors.hpp"
#include "entlab/mat4.hpp"

namespace entlab {

namespace detail {
inline const Mat4& spin_flip_yy() {
  // sigma_y (x) sigma_y = antidiag(-1, 1, 1, -1).
  static const Mat4 yy = [] {
    Mat4 m;
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
  }();
  return yy;
}
}  // namespace detail

// Concurrence of an arbitrary two-qubit density matrix: with
// rho_tilde = (sy x sy) conj(rho) (sy x sy), the eigenvalues of
// rho * rho_tilde are real and nonnegative; C = max(0, l1 - l2 - l3 - l4)
// where l_i are the decreasingly ordered square roots.
// Small negative (> -1e-8) or complex (< 1e-8) eigenvalue residues are
// floored as numerical noise; anything larger throws NegativeSpectrum.
inline double concurrence(const Mat4& rho) {
  if (rho.hermiticity_error() > 1e-8)
    throw NonHermitianInput("concurrence: state is not Hermitian");
  const Mat4& yy = detail::spin_flip_yy();
  const Mat4 prod = rho * (yy * rho.conjugate() * yy);

  const std::array<cplx, 4> ev = eig4(prod);
  std::array<double, 4> lam{};
  for (int k = 0; k < 4; ++k) {
    const double re = ev[static_cast<size_t>(k)].real();
    const double im = std::abs(ev[static_cast<size_t>(k)].imag());
    if (re < -1e-8)
      throw NegativeSpectrum("concurrence: spin-flip spectrum is negative");
    if (im > 1e-8)
      throw NegativeSpectrum("concurrence: spin-flip spectrum is not real");
    lam[static_cast<size_t>(k)] = std::sqrt(std::max(re, 0.0));
  }
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

// X-shaped state: nonzero entries only on the diagonal (a, b, c, d) and the
// two anti-diagonal coherences w = rho_14, z = rho_23.
struct XState {
  double a = 1.0, b = 0.0, c = 0.0, d = 0.0;
  cplx w{};  // <00|rho|11>
  cplx z{};  // <01|rho|10>

  // Extract from a density matrix; entries outside the X pattern must be
  // below `tol`.
  static XState from(const Mat4& rho, double tol = 1e-10) {
    static constexpr int kOff[8][2] = {{0, 1}, {0, 2}, {1, 0}, {2, 0},
                                       {1, 3}, {2, 3}, {3, 1}, {3, 2}};
    for (const auto& ij : kOff)
      if (std::abs(rho(ij[0], ij[1])) > tol)
        throw InvalidArgument("XState: matrix is not X-shaped");
    XState x;
    x.a = rho(0, 0).real();
    x.b = rho(1, 1).real();
    x.c = rho(2, 2).real();
    x.d = rho(3, 3).real();
    x.w = rho(0, 3);
    x.z = rho(1, 2);
    return x;
  }

  Mat4 to_rho() const {
    Mat4 m = Mat4::diag(a, b, c, d);
    m(0, 3) = w;
    m(3, 0) = std::conj(w);
    m(1, 2) = z;
    m(2, 1) = std::conj(z);
    return m;
  }
};

// Closed-form concurrence of an X state:
//   C = 2 max{ |w| - sqrt(b c), |z| - sqrt(a d), 0 }.
inline double concurrence_x(const XState& x) {
  const double corner = std::abs(x.w) - std::sqrt(std::max(x.b * x.c, 0.0));
  const double exchange = std::abs(x.z) - std::sqrt(std::max(x.a * x.d, 0.0));
  return 2.0 * std::max({corner, exchange, 0.0});
}

inline double concurrence_x(const Mat4& rho, double tol = 1e-10) {
  return concurrence_x(XState::from(rho, tol));
}

// Overlap fidelity tr(rho sigma); for a pure target projector sigma this is
// <psi|rho|psi>.
inline double fidelity(const Mat4& rho, const Mat4& target) {
  return overlap(rho, target);
}

}  // namespace entlab

#pragma once
// Eigenvalue routines for the 4x4 complex matrices used in this library.
//
// Two entry points:
//   * eig4_hermitian — cyclic complex Jacobi. Returns ascending real
//     eigenvalues together with the unitary of eigenvectors; used for
//     positivity checks and eigenvalue flooring of density matrices.
//   * eig4 — general (possibly non-normal) spectra via unitary Hessenberg
//     reduction followed by shifted QR with deflation; used for the spin-flip
//     product matrix inside the concurrence evaluation, which is similar to a
//     PSD matrix but not itself Hermitian.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "entlab/errors.hpp"
#include "entlab/mat4.hpp"

namespace entlab {

struct HermitianEig4 {
  std::array<double, 4> values{};  // ascending
  Mat4 vectors;                    // column k is the eigenvector of values[k]
};

// Diagonalize a Hermitian 4x4 matrix by cyclic complex Jacobi rotations.
// The input is symmetrized first, so tiny anti-Hermitian noise is tolerated;
// callers that care validate Hermiticity beforehand.
inline HermitianEig4 eig4_hermitian(const Mat4& in, int max_sweeps = 60) {
  Mat4 A = 0.5 * (in + in.adjoint());
  Mat4 V = Mat4::identity();

  double scale = 1.0;
  for (int i = 0; i < 4; ++i) scale = std::max(scale, std::abs(A(i, i)));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) scale = std::max(scale, std::abs(A(i, j)));

  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) off = std::max(off, std::abs(A(i, j)));
    if (off <= 1e-15 * scale) {
      converged = true;
      break;
    }
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        const cplx beta = A(p, q);
        const double ab = std::abs(beta);
        if (ab <= 1e-18 * scale) continue;
        const double alpha = A(p, p).real();
        const double delta = A(q, q).real();
        // Rotation angle: annihilate A(p,q). With tau = (alpha-delta)/(2|beta|)
        // the tangent t solves t^2 + 2 tau t - 1 = 0 (smaller root).
        const double tau = (alpha - delta) / (2.0 * ab);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const cplx sigma = (t * c) * (beta / ab);
        // Unitary U = [[c, -sigma], [conj(sigma), c]] on the (p,q) plane;
        // A <- U^dagger A U, V <- V U.
        for (int k = 0; k < 4; ++k) {  // column update (right-multiply by U)
          const cplx akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp + std::conj(sigma) * akq;
          A(k, q) = -sigma * akp + c * akq;
          const cplx vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp + std::conj(sigma) * vkq;
          V(k, q) = -sigma * vkp + c * vkq;
        }
        for (int k = 0; k < 4; ++k) {  // row update (left-multiply by U^dagger)
          const cplx apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk + sigma * aqk;
          A(q, k) = -std::conj(sigma) * apk + c * aqk;
        }
      }
    }
  }
  if (!converged) {
    // One final check: the loop may have exited by sweep count right after
    // reaching tolerance.
    double off = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) off = std::max(off, std::abs(A(i, j)));
    if (off > 1e-12 * scale)
      throw NoConvergence("hermitian eigensolver: Jacobi sweeps exhausted");
  }

  HermitianEig4 out;
  std::array<int, 4> order{0, 1, 2, 3};
  std::array<double, 4> d{};
  for (int i = 0; i < 4; ++i) d[static_cast<size_t>(i)] = A(i, i).real();
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return d[static_cast<size_t>(x)] < d[static_cast<size_t>(y)]; });
  for (int k = 0; k < 4; ++k) {
    out.values[static_cast<size_t>(k)] = d[static_cast<size_t>(order[static_cast<size_t>(k)])];
    for (int i = 0; i < 4; ++i)
      out.vectors(i, k) = V(i, order[static_cast<size_t>(k)]);
  }
  return out;
}

namespace detail {

// Complex Givens rotation G = [[c, s], [-conj(s), c]] (c real) with
// G * (a, b)^T = (r, 0)^T.
struct Givens {
  double c = 1.0;
  cplx s{};
};

inline Givens make_givens(cplx a, cplx b) {
  Givens g;
  const double bb = std::abs(b);
  if (bb == 0.0) return g;  // identity
  const double aa = std::abs(a);
  const double r = std::hypot(aa, bb);
  if (aa == 0.0) {
    g.c = 0.0;
    g.s = std::conj(b) / bb;
  } else {
    g.c = aa / r;
    g.s = a * std::conj(b) / (r * aa);
  }
  return g;
}

// Eigenvalues of [[a, b], [c, d]].
inline std::array<cplx, 2> eig2(cplx a, cplx b, cplx c, cplx d) {
  const cplx half_tr = 0.5 * (a + d);
  const cplx disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  return {half_tr + disc, half_tr - disc};
}

}  // namespace detail

// Eigenvalues of a general complex 4x4 matrix (arbitrary order). Unitary
// Householder reduction to upper Hessenberg form, then explicitly shifted QR
// with Wilkinson shifts and standard deflation.
inline std::array<cplx, 4> eig4(const Mat4& in, int max_iters = 500) {
  Mat4 H = in;
  const double eps = 2.220446049250313e-16;

  // --- Householder similarity to upper Hessenberg -------------------------
  for (int k = 0; k < 2; ++k) {
    // Zero H(k+2..3, k) with a reflector on rows/cols k+1..3.
    double colnorm = 0.0;
    for (int i = k + 1; i < 4; ++i) colnorm += std::norm(H(i, k));
    colnorm = std::sqrt(colnorm);
    double below = 0.0;
    for (int i = k + 2; i < 4; ++i) below += std::abs(H(i, k));
    if (below <= eps * colnorm || colnorm == 0.0) continue;

    std::array<cplx, 4> v{};  // reflector, entries k+1..3 used
    const cplx pivot = H(k + 1, k);
    const cplx phase = (std::abs(pivot) > 0.0) ? pivot / std::abs(pivot) : cplx(1.0, 0.0);
    for (int i = k + 1; i < 4; ++i) v[static_cast<size_t>(i)] = H(i, k);
    v[static_cast<size_t>(k + 1)] += phase * colnorm;
    double vn = 0.0;
    for (int i = k + 1; i < 4; ++i) vn += std::norm(v[static_cast<size_t>(i)]);
    if (vn == 0.0) continue;
    // P = I - 2 v v^dagger / (v^dagger v); apply H <- P H P.
    const double inv = 2.0 / vn;
    // Left: H <- H - inv * v (v^dagger H)
    for (int j = 0; j < 4; ++j) {
      cplx w{};
      for (int i = k + 1; i < 4; ++i) w += std::conj(v[static_cast<size_t>(i)]) * H(i, j);
      w *= inv;
      for (int i = k + 1; i < 4; ++i) H(i, j) -= v[static_cast<size_t>(i)] * w;
    }
    // Right: H <- H - inv * (H v) v^dagger
    for (int i = 0; i < 4; ++i) {
      cplx w{};
      for (int j = k + 1; j < 4; ++j) w += H(i, j) * v[static_cast<size_t>(j)];
      w *= inv;
      for (int j = k + 1; j < 4; ++j) H(i, j) -= w * std::conj(v[static_cast<size_t>(j)]);
    }
  }

  // --- Shifted QR on the Hessenberg form ----------------------------------
  std::array<cplx, 4> ev{};
  int n = 4;  // active window is rows/cols [0, n)
  int iters = 0;
  int since_deflation = 0;

  const auto subdiag_small = [&](int i) {
    // True when H(i, i-1) is negligible relative to its diagonal neighbours.
    const double thr =
        eps * (std::abs(H(i - 1, i - 1)) + std::abs(H(i, i))) + 1e-300;
    return std::abs(H(i, i - 1)) <= thr;
  };

  while (n > 0) {
    if (n == 1) {
      ev[0] = H(0, 0);
      break;
    }
    if (subdiag_small(n - 1)) {
      ev[static_cast<size_t>(n - 1)] = H(n - 1, n - 1);
      --n;
      since_deflation = 0;
      continue;
    }
    if (n == 2 || subdiag_small(n - 2)) {
      const auto pair =
          detail::eig2(H(n - 2, n - 2), H(n - 2, n - 1), H(n - 1, n - 2), H(n - 1, n - 1));
      ev[static_cast<size_t>(n - 1)] = pair[0];
      ev[static_cast<size_t>(n - 2)] = pair[1];
      n -= 2;
      since_deflation = 0;
      continue;
    }
    if (++iters > max_iters)
      throw NoConvergence("general eigensolver: QR iteration stalled");

    // Wilkinson shift: trailing 2x2 eigenvalue closest to H(n-1, n-1).
    const auto pair =
        detail::eig2(H(n - 2, n - 2), H(n - 2, n - 1), H(n - 1, n - 2), H(n - 1, n - 1));
    cplx shift = (std::abs(pair[0] - H(n - 1, n - 1)) < std::abs(pair[1] - H(n - 1, n - 1)))
                     ? pair[0]
                     : pair[1];
    if (++since_deflation % 25 == 0)  // rare stagnation escape
      shift = H(n - 1, n - 1) + cplx(std::abs(H(n - 1, n - 2)), 0.0);

    for (int i = 0; i < n; ++i) H(i, i) -= shift;
    // QR by a chain of Givens rotations on the subdiagonal, then RQ.
    std::array<detail::Givens, 3> rots{};
    for (int k = 0; k < n - 1; ++k) {
      const auto g = detail::make_givens(H(k, k), H(k + 1, k));
      rots[static_cast<size_t>(k)] = g;
      for (int j = 0; j < 4; ++j) {  // rows k, k+1
        const cplx hkj = H(k, j), hk1j = H(k + 1, j);
        H(k, j) = g.c * hkj + g.s * hk1j;
        H(k + 1, j) = -std::conj(g.s) * hkj + g.c * hk1j;
      }
    }
    for (int k = 0; k < n - 1; ++k) {  // columns k, k+1 (right-multiply by G^dagger)
      const auto& g = rots[static_cast<size_t>(k)];
      for (int i = 0; i < 4; ++i) {
        const cplx hik = H(i, k), hik1 = H(i, k + 1);
        H(i, k) = g.c * hik + std::conj(g.s) * hik1;
        H(i, k + 1) = -g.s * hik + g.c * hik1;
      }
    }
    for (int i = 0; i < n; ++i) H(i, i) += shift;
  }
  return ev;
}

}  // namespace entlab

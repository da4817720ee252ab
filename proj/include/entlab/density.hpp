#pragma once
// Validated density matrices and spectral repair of near-physical states.
//
// DensityMatrix wraps a Mat4 that has passed Hermiticity, unit-trace, and
// positivity checks. Numerical pipelines accumulate tiny violations; the
// policy is: symmetrize silently below the Hermiticity tolerance, renormalize
// a trace drift up to 1e-9, floor eigenvalues in [-1e-8, 0) to zero, and
// refuse anything worse.

#include <cmath>

#include "entlab/eig.hpp"
#include "entlab/errors.hpp"
#include "entlab/mat4.hpp"

namespace entlab {

struct StateTolerances {
  double hermiticity = 1e-9;   // max |rho_ij - conj(rho_ji)| accepted
  double trace = 1e-9;         // |tr(rho) - 1| accepted (renormalized away)
  double eig_floor = -1e-8;    // eigenvalues in [eig_floor, 0) are clipped
};

// Eigenvalue flooring: clip eigenvalues in [floor, 0) to zero and rebuild.
// An eigenvalue below `floor` is a genuine positivity failure.
inline Mat4 clip_to_physical(const Mat4& rho, double eig_floor = -1e-8) {
  const HermitianEig4 e = eig4_hermitian(rho);
  if (e.values[0] < eig_floor)
    throw PositivityLoss("state eigenvalue below clipping floor");
  if (e.values[0] >= 0.0) return rho;

  Mat4 out;
  double tr = 0.0;
  std::array<double, 4> lam = e.values;
  for (double& l : lam) {
    if (l < 0.0) l = 0.0;
    tr += l;
  }
  if (tr <= 0.0) throw PositivityLoss("state spectrum collapsed to zero");
  for (int k = 0; k < 4; ++k) {
    const double w = lam[static_cast<size_t>(k)] / tr;
    if (w == 0.0) continue;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        out(i, j) += w * e.vectors(i, k) * std::conj(e.vectors(j, k));
  }
  return out;
}

class DensityMatrix {
 public:
  // Validate and adopt a raw matrix. Violations beyond the tolerances throw
  // (NonHermitianInput, InvalidState, PositivityLoss); tolerated ones are
  // repaired (symmetrization, trace renormalization, eigenvalue flooring).
  static DensityMatrix checked(const Mat4& raw, const StateTolerances& tol = {}) {
    if (raw.hermiticity_error() > tol.hermiticity)
      throw NonHermitianInput("density matrix is not Hermitian");
    Mat4 rho = 0.5 * (raw + raw.adjoint());

    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > tol.trace)
      throw InvalidState("density matrix trace deviates from one");
    if (tr != 1.0) rho *= cplx(1.0 / tr, 0.0);

    rho = clip_to_physical(rho, tol.eig_floor);
    return DensityMatrix(rho);
  }

  const Mat4& rho() const { return rho_; }

  double population(int k) const { return rho_(k, k).real(); }
  double purity() const { return (rho_ * rho_).trace().real(); }

 private:
  explicit DensityMatrix(const Mat4& rho) : rho_(rho) {}
  Mat4 rho_;
};

// Hilbert-Schmidt overlap tr(a b) of two Hermitian matrices (real by
// construction; used as the fidelity proxy tr(rho sigma) against pure targets,
// where it equals <psi|rho|psi>).
inline double overlap(const Mat4& a, const Mat4& b) {
  return (a * b).trace().real();
}

}  // namespace entlab

// Linear-algebra layer: 4x4 complex value types, Kronecker embedding, and the
// two eigen solvers (Hermitian Jacobi; general QR).

#include <cmath>
#include <random>

#include "catch2/catch_amalgamated.hpp"
#include "entlab/basis.hpp"
#include "entlab/eig.hpp"
#include "entlab/mat4.hpp"

using namespace entlab;
using Catch::Approx;

namespace {

std::mt19937 rng(20240811u);

Mat4 random_matrix() {
  std::normal_distribution<double> n;
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

Mat4 random_hermitian() {
  const Mat4 g = random_matrix();
  return 0.5 * (g + g.adjoint());
}

}  // namespace

TEST_CASE("matrix arithmetic identities") {
  const Mat4 x = random_matrix();
  const Mat4 y = random_matrix();
  const Mat4 z = random_matrix();

  REQUIRE(max_abs_diff((x + y) * z, x * z + y * z) < 1e-12);
  REQUIRE(max_abs_diff(x * (y + z), x * y + x * z) < 1e-12);
  REQUIRE(max_abs_diff((x * y) * z, x * (y * z)) < 1e-12);
  REQUIRE(max_abs_diff(Mat4::identity() * x, x) == 0.0);
  REQUIRE(max_abs_diff(x * Mat4::identity(), x) == 0.0);

  // adjoint reverses products and conjugates
  REQUIRE(max_abs_diff((x * y).adjoint(), y.adjoint() * x.adjoint()) < 1e-12);
  REQUIRE(max_abs_diff(x.adjoint(), x.conjugate().transpose()) == 0.0);

  // trace is linear and cyclic
  REQUIRE(std::abs((x * y).trace() - (y * x).trace()) < 1e-12);

  // commutator/anticommutator decompose the product
  REQUIRE(max_abs_diff(commutator(x, y) + anticommutator(x, y), 2.0 * (x * y)) <
          1e-12);
}

TEST_CASE("hs_inner matches trace definition and detects orthonormality") {
  const Mat4 x = random_matrix();
  const Mat4 y = random_matrix();
  REQUIRE(std::abs(hs_inner(x, y) - (x.adjoint() * y).trace()) < 1e-12);

  const auto& basis = omega_basis();
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 15; ++j) {
      const double expected = (i == j) ? 1.0 : 0.0;
      REQUIRE(std::abs(hs_inner(basis[static_cast<size_t>(i)],
                                basis[static_cast<size_t>(j)]) -
                       expected) < 1e-12);
    }
  for (int i = 0; i < 15; ++i) {
    REQUIRE(std::abs(basis[static_cast<size_t>(i)].trace()) < 1e-12);
    REQUIRE(basis[static_cast<size_t>(i)].hermiticity_error() < 1e-12);
  }
}

TEST_CASE("kron embeds factors in the row = 2a + b ordering") {
  Mat2 sz;
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  const Mat4 z1 = kron(sz, Mat2::identity());
  const Mat4 z2 = kron(Mat2::identity(), sz);
  // atom 1 flips sign on rows 2,3; atom 2 on rows 1,3
  REQUIRE(z1(0, 0) == cplx(1.0));
  REQUIRE(z1(1, 1) == cplx(1.0));
  REQUIRE(z1(2, 2) == cplx(-1.0));
  REQUIRE(z1(3, 3) == cplx(-1.0));
  REQUIRE(z2(0, 0) == cplx(1.0));
  REQUIRE(z2(1, 1) == cplx(-1.0));
  REQUIRE(z2(2, 2) == cplx(1.0));
  REQUIRE(z2(3, 3) == cplx(-1.0));

  const Mat4 a = random_matrix();
  (void)a;
  // mixed product rule (A (x) B)(C (x) D) = AC (x) BD
  Mat2 p, q, r, s;
  std::normal_distribution<double> n;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      p(i, j) = cplx(n(rng), n(rng));
      q(i, j) = cplx(n(rng), n(rng));
      r(i, j) = cplx(n(rng), n(rng));
      s(i, j) = cplx(n(rng), n(rng));
    }
  Mat2 pr, qs;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      pr(i, j) = p(i, 0) * r(0, j) + p(i, 1) * r(1, j);
      qs(i, j) = q(i, 0) * s(0, j) + q(i, 1) * s(1, j);
    }
  REQUIRE(max_abs_diff(kron(p, q) * kron(r, s), kron(pr, qs)) < 1e-12);
}

TEST_CASE("hermitian eigensolver reconstructs random matrices") {
  for (int trial = 0; trial < 50; ++trial) {
    const Mat4 h = random_hermitian();
    const HermitianEig4 e = eig4_hermitian(h);

    // ascending order
    for (int k = 0; k + 1 < 4; ++k) REQUIRE(e.values[k] <= e.values[k + 1]);

    // eigenvalue equation per column
    for (int k = 0; k < 4; ++k) {
      for (int i = 0; i < 4; ++i) {
        cplx hv{};
        for (int j = 0; j < 4; ++j) hv += h(i, j) * e.vectors(j, k);
        REQUIRE(std::abs(hv - e.values[k] * e.vectors(i, k)) < 1e-9);
      }
    }

    // unitarity of the eigenvector matrix
    REQUIRE(max_abs_diff(e.vectors.adjoint() * e.vectors, Mat4::identity()) <
            1e-10);

    // spectral sums match trace / Frobenius norm
    double sum = 0.0, sq = 0.0;
    for (double v : e.values) {
      sum += v;
      sq += v * v;
    }
    REQUIRE(sum == Approx(h.trace().real()).margin(1e-10));
    REQUIRE(std::sqrt(sq) == Approx(h.fro_norm()).margin(1e-10));
  }
}

TEST_CASE("hermitian eigensolver on known spectra") {
  const HermitianEig4 d = eig4_hermitian(Mat4::diag(4.0, -1.0, 2.0, 0.0));
  REQUIRE(d.values[0] == Approx(-1.0).margin(1e-12));
  REQUIRE(d.values[1] == Approx(0.0).margin(1e-12));
  REQUIRE(d.values[2] == Approx(2.0).margin(1e-12));
  REQUIRE(d.values[3] == Approx(4.0).margin(1e-12));

  // rank-one projector: eigenvalues {0,0,0,1}
  Mat4 bell;
  bell(0, 0) = bell(3, 3) = 0.5;
  bell(0, 3) = bell(3, 0) = 0.5;
  const HermitianEig4 e = eig4_hermitian(bell);
  REQUIRE(e.values[0] == Approx(0.0).margin(1e-12));
  REQUIRE(e.values[2] == Approx(0.0).margin(1e-12));
  REQUIRE(e.values[3] == Approx(1.0).margin(1e-12));
}

TEST_CASE("general eigensolver finds complex spectra") {
  // upper triangular: eigenvalues on the diagonal
  Mat4 u;
  u(0, 0) = cplx(1.0, 2.0);
  u(1, 1) = cplx(-0.5, 0.0);
  u(2, 2) = cplx(0.0, -1.0);
  u(3, 3) = cplx(2.0, 0.5);
  u(0, 1) = 3.0;
  u(1, 3) = cplx(0.0, 1.0);
  u(2, 3) = -2.0;

  auto ev = eig4(u);
  std::array<cplx, 4> want = {cplx(1.0, 2.0), cplx(-0.5, 0.0), cplx(0.0, -1.0),
                              cplx(2.0, 0.5)};
  // match each wanted eigenvalue to the closest computed one
  for (const cplx& w : want) {
    double best = 1e9;
    for (const cplx& v : ev) best = std::min(best, std::abs(v - w));
    REQUIRE(best < 1e-8);
  }
}

TEST_CASE("general eigensolver agrees with hermitian solver") {
  for (int trial = 0; trial < 20; ++trial) {
    const Mat4 h = random_hermitian();
    const HermitianEig4 ref = eig4_hermitian(h);
    auto ev = eig4(h);
    std::array<double, 4> got{};
    for (int k = 0; k < 4; ++k) {
      REQUIRE(std::abs(ev[static_cast<size_t>(k)].imag()) < 1e-8);
      got[static_cast<size_t>(k)] = ev[static_cast<size_t>(k)].real();
    }
    std::sort(got.begin(), got.end());
    for (int k = 0; k < 4; ++k)
      REQUIRE(got[static_cast<size_t>(k)] ==
              Approx(ref.values[static_cast<size_t>(k)]).margin(1e-8));
  }
}

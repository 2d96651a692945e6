#include <doctest.h>

#include <array>

#include "dilutron/error.hpp"
#include "dilutron/linalg.hpp"
#include "dilutron/random.hpp"
#include "test_support.hpp"

using namespace dilutron;

TEST_CASE("jacobi eigenvalues match Eigen's solver") {
  Rng rng = make_rng(11);
  for (int n = 1; n <= 12; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const ComplexMatrix h = oracle::random_hermitian(rng, n);
      const auto eig = hermitian_eig(h);
      const auto ref = oracle::eigenvalues(h);
      for (int k = 0; k < n; ++k) CHECK(eig.eigenvalues(k) == doctest::Approx(ref[static_cast<std::size_t>(k)]).epsilon(1e-12));
      for (int k = 1; k < n; ++k) CHECK(eig.eigenvalues(k) <= eig.eigenvalues(k - 1));
      const ComplexMatrix v = eig.eigenvectors;
      CHECK(oracle::max_abs(v.adjoint() * v - ComplexMatrix::Identity(n, n)) < 1e-12);
      const ComplexMatrix back = v * eig.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
      CHECK(oracle::max_abs(back - h) < 1e-12);
      const RealVector only = hermitian_eigenvalues(h);
      CHECK((only - eig.eigenvalues).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("jacobi is deterministic") {
  Rng rng = make_rng(12);
  const ComplexMatrix h = oracle::random_hermitian(rng, 9);
  const auto a = hermitian_eig(h);
  const auto b = hermitian_eig(h);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
  CHECK(a.sweeps == b.sweeps);
}

TEST_CASE("degenerate and diagonal spectra") {
  const ComplexMatrix id = ComplexMatrix::Identity(5, 5);
  const auto eig = hermitian_eig(id);
  for (int k = 0; k < 5; ++k) CHECK(eig.eigenvalues(k) == 1.0);
  ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
  diag(0, 0) = 0.2;
  diag(1, 1) = 0.7;
  diag(2, 2) = 0.1;
  const RealVector ev = hermitian_eigenvalues(diag);
  CHECK(ev(0) == 0.7);
  CHECK(ev(1) == 0.2);
  CHECK(ev(2) == 0.1);
}

TEST_CASE("non-Hermitian and non-square input is rejected") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eig(m), Error);
  try {
    hermitian_eig(m);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotHermitian);
  }
  try {
    hermitian_eig(ComplexMatrix::Zero(2, 3));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNonSquare);
  }
}

TEST_CASE("small eigenvalue kernel matches Eigen") {
  Rng rng = make_rng(13);
  for (int n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix h = oracle::random_hermitian(rng, n);
      std::array<Complex, 64> a{};
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i * n + j)] = h(i, j);
      std::array<double, 8> out{};
      small_hermitian_eigenvalues(a.data(), n, out.data());
      const auto ref = oracle::eigenvalues(h);
      for (int k = 0; k < n; ++k)
        CHECK(out[static_cast<std::size_t>(k)] == doctest::Approx(ref[static_cast<std::size_t>(k)]).epsilon(1e-12));
    }
  }
}

TEST_CASE("support rank thresholds relative to the largest eigenvalue") {
  const std::vector<double> ev{1.0, 0.5, 1e-9, 1e-11, 0.0};
  CHECK(support_rank(ev) == 3);
  CHECK(support_rank(ev, 1e-8) == 2);
  const std::vector<double> zeros{0.0, 0.0};
  CHECK(support_rank(zeros) == 0);
  const std::vector<double> scaled{1e-20, 1e-21, 1e-31};
  CHECK(support_rank(scaled) == 2);
}

TEST_CASE("trace norm and singular values match SVD") {
  Rng rng = make_rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const int r = 1 + trial % 5;
    const int c = 1 + (trial / 5) % 4;
    const ComplexMatrix a = complex_gaussian(rng, r, c);
    const RealVector s = singular_values(a);
    const auto ref = oracle::singular_values(a);
    for (std::size_t k = 0; k < ref.size(); ++k)
      CHECK(s(static_cast<Eigen::Index>(k)) == doctest::Approx(ref[k]).epsilon(1e-12));
    CHECK(trace_norm(a) == doctest::Approx(oracle::trace_norm(a)).epsilon(1e-12));
    const ComplexMatrix h = oracle::random_hermitian(rng, r);
    CHECK(trace_norm(h) == doctest::Approx(oracle::trace_norm(h)).epsilon(1e-12));
  }
}

TEST_CASE("trace norm properties") {
  Rng rng = make_rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 4;
    const ComplexMatrix x = complex_gaussian(rng, n, n);
    const ComplexMatrix y = complex_gaussian(rng, n, n);
    CHECK(trace_norm(x + y) <= trace_norm(x) + trace_norm(y) + 1e-12);
    const ComplexMatrix u = random_unitary(rng, n);
    CHECK(trace_norm(u * x * u.adjoint()) == doctest::Approx(trace_norm(x)).epsilon(1e-12));
    CHECK(trace_norm(2.5 * x) == doctest::Approx(2.5 * trace_norm(x)).epsilon(1e-12));
  }
}

TEST_CASE("psd square root") {
  Rng rng = make_rng(16);
  for (int n = 1; n <= 6; ++n) {
    const ComplexMatrix g = complex_gaussian(rng, n, std::max(1, n - 1));
    const ComplexMatrix p = g * g.adjoint();
    const ComplexMatrix r = psd_sqrt(p);
    CHECK(oracle::max_abs(r * r - p) < 1e-12 * std::max(1.0, oracle::max_abs(p)));
    CHECK(oracle::max_abs(r - oracle::sqrt_psd(p)) < 1e-7);
  }
  ComplexMatrix neg = ComplexMatrix::Identity(2, 2);
  neg(1, 1) = -0.1;
  try {
    psd_sqrt(neg);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotPositive);
  }
}

TEST_CASE("fidelity against the defining formula") {
  Rng rng = make_rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    const ComplexMatrix g1 = complex_gaussian(rng, n, n);
    const ComplexMatrix g2 = complex_gaussian(rng, n, 1 + trial % n);
    ComplexMatrix rho = g1 * g1.adjoint();
    ComplexMatrix sigma = g2 * g2.adjoint();
    rho /= rho.trace();
    sigma /= sigma.trace();
    const ComplexMatrix s = oracle::sqrt_psd(rho);
    const ComplexMatrix inner = s * sigma * s;
    // Rank-deficient sigma leaves eigenvalues at rounding level; their square
    // roots would swamp the comparison, so they are dropped.
    double ref = 0.0;
    for (double x : oracle::eigenvalues(0.5 * (inner + inner.adjoint())))
      if (x > 1e-14) ref += std::sqrt(x);
    CHECK(fidelity(rho, sigma) == doctest::Approx(ref).epsilon(1e-9));
    CHECK(fidelity(rho, sigma) == doctest::Approx(fidelity(sigma, rho)).epsilon(1e-10));
    CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));
  }
  ComplexVector psi = complex_gaussian(rng, 3, 1);
  ComplexVector phi = complex_gaussian(rng, 3, 1);
  psi.normalize();
  phi.normalize();
  CHECK(fidelity(psi * psi.adjoint(), phi * phi.adjoint()) == doctest::Approx(std::abs(psi.dot(phi))).epsilon(1e-9));
}

TEST_CASE("partial trace and partial transpose against index loops") {
  Rng rng = make_rng(18);
  for (int da = 1; da <= 3; ++da)
    for (int db = 1; db <= 3; ++db) {
      const Dims dims{da, db};
      const ComplexMatrix m = complex_gaussian(rng, da * db, da * db);
      CHECK(oracle::max_abs(partial_trace(m, Subsystem::kA, dims) - oracle::trace_out_b(m, da, db)) < 1e-13);
      CHECK(oracle::max_abs(partial_trace(m, Subsystem::kB, dims) - oracle::trace_out_a(m, da, db)) < 1e-13);

      ComplexMatrix ref(da * db, da * db);
      for (int a1 = 0; a1 < da; ++a1)
        for (int b1 = 0; b1 < db; ++b1)
          for (int a2 = 0; a2 < da; ++a2)
            for (int b2 = 0; b2 < db; ++b2) ref(a1 * db + b1, a2 * db + b2) = m(a1 * db + b2, a2 * db + b1);
      const ComplexMatrix pt = partial_transpose(m, dims);
      CHECK(oracle::max_abs(pt - ref) < 1e-15);
      CHECK(oracle::max_abs(partial_transpose(pt, dims) - m) < 1e-15);
    }
  const ComplexMatrix x = complex_gaussian(rng, 2, 2);
  const ComplexMatrix y = complex_gaussian(rng, 3, 3);
  CHECK(oracle::max_abs(partial_trace(kron(x, y), Subsystem::kA, Dims{2, 3}) - y.trace() * x) < 1e-13);
}

TEST_CASE("kron and subsystem permutation") {
  Rng rng = make_rng(19);
  const ComplexMatrix x = complex_gaussian(rng, 2, 2);
  const ComplexMatrix y = complex_gaussian(rng, 3, 3);
  const ComplexMatrix k = kron(x, y);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) CHECK(k(i * 3 + p, j * 3 + q) == x(i, j) * y(p, q));

  const std::array<int, 2> dims{2, 3};
  const std::array<int, 2> swap{1, 0};
  CHECK(oracle::max_abs(permute_subsystems(k, dims, swap) - kron(y, x)) < 1e-15);

  const ComplexVector u = complex_gaussian(rng, 2, 1);
  const ComplexVector v = complex_gaussian(rng, 3, 1);
  CHECK((permute_subsystems(ComplexVector(kron(u, v)), dims, swap) - kron(v, u)).cwiseAbs().maxCoeff() < 1e-15);

  const ComplexMatrix z = complex_gaussian(rng, 2, 2);
  const std::array<int, 3> dims3{2, 3, 2};
  const std::array<int, 3> cycle{2, 0, 1};
  CHECK(oracle::max_abs(permute_subsystems(kron(kron(x, y), z), dims3, cycle) - kron(kron(z, x), y)) < 1e-15);
}

TEST_CASE("schmidt decomposition reconstructs the state") {
  Rng rng = make_rng(20);
  for (int da = 1; da <= 4; ++da)
    for (int db = 1; db <= 4; ++db) {
      ComplexVector psi = complex_gaussian(rng, da * db, 1);
      psi.normalize();
      const auto sd = schmidt_decompose(psi, Dims{da, db});
      const auto ref = oracle::schmidt_coefficients(psi, da, db);
      REQUIRE(sd.coefficients.size() == static_cast<std::size_t>(std::min(da, db)));
      double total = 0.0;
      ComplexVector back = ComplexVector::Zero(da * db);
      for (std::size_t k = 0; k < sd.coefficients.size(); ++k) {
        CHECK(sd.coefficients[k] == doctest::Approx(ref[k]).epsilon(1e-12));
        total += sd.coefficients[k];
        back += std::sqrt(sd.coefficients[k]) *
                kron(ComplexVector(sd.basis_a.col(static_cast<Eigen::Index>(k))),
                     ComplexVector(sd.basis_b.col(static_cast<Eigen::Index>(k))));
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      CHECK((back - psi).cwiseAbs().maxCoeff() < 1e-10);
    }
  ComplexVector product = ComplexVector::Zero(4);
  product(0) = 1.0;
  CHECK(schmidt_decompose(product, Dims{2, 2}).coefficients.size() == 1);
  CHECK_THROWS_AS(schmidt_decompose(2.0 * product, Dims{2, 2}), Error);
}

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "dilutron/linalg.hpp"
#include "dilutron/random.hpp"

// Reference computations built on Eigen's own solvers. The library never
// calls these; tests compare against them.
namespace oracle {

using dilutron::Complex;
using dilutron::ComplexMatrix;
using dilutron::ComplexVector;
using dilutron::RealVector;

using ColMajor = Eigen::MatrixXcd;

inline ComplexMatrix random_hermitian(dilutron::Rng& rng, int n) {
  const ComplexMatrix g = dilutron::complex_gaussian(rng, n, n);
  return 0.5 * (g + g.adjoint());
}

/// Eigenvalues, non-increasing.
inline std::vector<double> eigenvalues(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ColMajor> es(ColMajor(h), Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

inline std::vector<double> singular_values(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ColMajor> svd{ColMajor(a)};
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

inline double trace_norm(const ComplexMatrix& a) {
  double t = 0.0;
  for (double s : singular_values(a)) t += s;
  return t;
}

/// f applied to the spectrum of a Hermitian matrix.
template <typename F>
ComplexMatrix spectral_function(const ComplexMatrix& h, F f) {
  Eigen::SelfAdjointEigenSolver<ColMajor> es{ColMajor(h)};
  Eigen::VectorXcd d(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < d.size(); ++k) d(k) = f(es.eigenvalues()(k));
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

inline ComplexMatrix sqrt_psd(const ComplexMatrix& h) {
  return spectral_function(h, [](double x) { return std::sqrt(std::max(0.0, x)); });
}

inline double von_neumann(const ComplexMatrix& rho) {
  double s = 0.0;
  for (double x : eigenvalues(rho))
    if (x > 1e-14) s -= x * std::log2(x);
  return s;
}

/// Tr_B / Tr_A by explicit index loops; A-major ordering.
inline ComplexMatrix trace_out_b(const ComplexMatrix& rho, int da, int db) {
  ComplexMatrix out = ComplexMatrix::Zero(da, da);
  for (int a1 = 0; a1 < da; ++a1)
    for (int a2 = 0; a2 < da; ++a2)
      for (int b = 0; b < db; ++b) out(a1, a2) += rho(a1 * db + b, a2 * db + b);
  return out;
}

inline ComplexMatrix trace_out_a(const ComplexMatrix& rho, int da, int db) {
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (int b1 = 0; b1 < db; ++b1)
    for (int b2 = 0; b2 < db; ++b2)
      for (int a = 0; a < da; ++a) out(b1, b2) += rho(a * db + b1, a * db + b2);
  return out;
}

/// Squared singular values of the d_A x d_B coefficient matrix of psi.
inline std::vector<double> schmidt_coefficients(const ComplexVector& psi, int da, int db) {
  ComplexMatrix c(da, db);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b) c(a, b) = psi(a * db + b);
  auto s = singular_values(c);
  for (auto& x : s) x *= x;
  return s;
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle

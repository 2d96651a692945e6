#include "dilutron/linalg.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>

#include "dilutron/error.hpp"

namespace dilutron {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNotHermitian: return "NotHermitian";
    case ErrorKind::kNoConvergence: return "NoConvergence";
    case ErrorKind::kNonSquare: return "NonSquare";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kNotNormalized: return "NotNormalized";
    case ErrorKind::kNotPositive: return "NotPositive";
    case ErrorKind::kTraceNotOne: return "TraceNotOne";
    case ErrorKind::kRankTooLarge: return "RankTooLarge";
    case ErrorKind::kParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::kNotIsometry: return "NotIsometry";
    case ErrorKind::kRankMismatch: return "RankMismatch";
    case ErrorKind::kDimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::kInput: return "InputError";
  }
  return "Unknown";
}

namespace {

constexpr int kMaxSweeps = 100;

// Cyclic Jacobi on a row-major Hermitian n x n array. `v` (row-major, may be
// null) accumulates the rotations. Returns the number of sweeps used.
int jacobi_sweeps(Complex* a, int n, Complex* v) {
  auto at = [n](Complex* m, int r, int c) -> Complex& { return m[r * n + c]; };
  for (int i = 0; i < n; ++i) at(a, i, i) = Complex(at(a, i, i).real(), 0.0);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    double diag = 0.0;
    for (int p = 0; p < n; ++p) {
      diag += std::norm(at(a, p, p));
      for (int q = p + 1; q < n; ++q) off += std::norm(at(a, p, q));
    }
    if (off == 0.0 || off <= 1e-32 * (diag + 2.0 * off)) return sweep;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = at(a, p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = at(a, p, p).real();
        const double aqq = at(a, q, q).real();
        const double g = 100.0 * mag;
        if (sweep > 3 && std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq)) {
          at(a, p, q) = 0.0;
          at(a, q, p) = 0.0;
          continue;
        }
        const double h = aqq - app;
        double t;
        if (std::abs(h) + g == std::abs(h)) {
          t = mag / h;
        } else {
          const double theta = 0.5 * h / mag;
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex ph = std::conj(apq) / mag;
        // Unitary acting on the (p, q) plane: U = [[c, s], [-s ph, c ph]].
        const Complex upp = c;
        const Complex upq = s;
        const Complex uqp = -s * ph;
        const Complex uqq = c * ph;

        for (int k = 0; k < n; ++k) {
          const Complex akp = at(a, k, p);
          const Complex akq = at(a, k, q);
          at(a, k, p) = akp * upp + akq * uqp;
          at(a, k, q) = akp * upq + akq * uqq;
        }
        for (int k = 0; k < n; ++k) {
          const Complex apk = at(a, p, k);
          const Complex aqk = at(a, q, k);
          at(a, p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          at(a, q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        at(a, p, q) = 0.0;
        at(a, q, p) = 0.0;
        at(a, p, p) = Complex(at(a, p, p).real(), 0.0);
        at(a, q, q) = Complex(at(a, q, q).real(), 0.0);

        if (v != nullptr) {
          for (int k = 0; k < n; ++k) {
            const Complex vkp = at(v, k, p);
            const Complex vkq = at(v, k, q);
            at(v, k, p) = vkp * upp + vkq * uqp;
            at(v, k, q) = vkp * upq + vkq * uqq;
          }
        }
      }
    }
  }
  throw Error(ErrorKind::kNoConvergence, "Jacobi iteration exceeded sweep cap");
}

void check_hermitian(const ComplexMatrix& h, double tol) {
  if (h.rows() != h.cols()) throw Error(ErrorKind::kNonSquare, "hermitian_eig requires a square matrix");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (max_abs_deviation_from_hermitian(h) > tol * scale)
    throw Error(ErrorKind::kNotHermitian, "matrix deviates from its adjoint beyond tolerance");
}

std::vector<int> descending_order(const double* values, int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [values](int x, int y) { return values[x] > values[y]; });
  return order;
}

}  // namespace

double max_abs_deviation_from_hermitian(const ComplexMatrix& h) {
  if (h.size() == 0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

SpectralDecomposition hermitian_eig(const ComplexMatrix& h, double hermiticity_tol) {
  check_hermitian(h, hermiticity_tol);
  const int n = static_cast<int>(h.rows());
  ComplexMatrix a = 0.5 * (h + h.adjoint());
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  SpectralDecomposition out;
  out.sweeps = jacobi_sweeps(a.data(), n, v.data());

  std::vector<double> diag(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) diag[static_cast<std::size_t>(i)] = a(i, i).real();
  const auto order = descending_order(diag.data(), n);
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues(k) = diag[static_cast<std::size_t>(order[k])];
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& h, double hermiticity_tol) {
  check_hermitian(h, hermiticity_tol);
  const int n = static_cast<int>(h.rows());
  ComplexMatrix a = 0.5 * (h + h.adjoint());
  jacobi_sweeps(a.data(), n, nullptr);
  RealVector ev(n);
  for (int i = 0; i < n; ++i) ev(i) = a(i, i).real();
  std::sort(ev.data(), ev.data() + n, std::greater<>());
  return ev;
}

void small_hermitian_eigenvalues(Complex* a, int n, double* out) {
  if (n == 1) {
    out[0] = a[0].real();
    return;
  }
  if (n == 2) {
    const double p = a[0].real();
    const double q = a[3].real();
    const double mean = 0.5 * (p + q);
    const double half = 0.5 * (p - q);
    const double r = std::sqrt(half * half + std::norm(a[1]));
    out[0] = mean + r;
    out[1] = mean - r;
    return;
  }
  jacobi_sweeps(a, n, nullptr);
  for (int i = 0; i < n; ++i) out[i] = a[i * n + i].real();
  std::sort(out, out + n, std::greater<>());
}

int support_rank(std::span<const double> eigenvalues_desc, double rank_tol) {
  if (eigenvalues_desc.empty()) return 0;
  const double lmax = *std::max_element(eigenvalues_desc.begin(), eigenvalues_desc.end());
  if (!(lmax > 0.0)) return 0;
  const double cut = rank_tol * lmax;
  return static_cast<int>(std::count_if(eigenvalues_desc.begin(), eigenvalues_desc.end(),
                                        [cut](double x) { return x > cut; }));
}

RealVector singular_values(const ComplexMatrix& a) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  ComplexMatrix dil = ComplexMatrix::Zero(m + n, m + n);
  dil.topRightCorner(m, n) = a;
  dil.bottomLeftCorner(n, m) = a.adjoint();
  const RealVector ev = hermitian_eigenvalues(dil);
  const Eigen::Index k = std::min(m, n);
  RealVector sv(k);
  for (Eigen::Index i = 0; i < k; ++i) sv(i) = std::max(0.0, ev(i));
  return sv;
}

double trace_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  if (a.rows() == a.cols() && max_abs_deviation_from_hermitian(a) <= 1e-14 * scale)
    return hermitian_eigenvalues(a).cwiseAbs().sum();
  return singular_values(a).sum();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& rho) {
  const auto eig = hermitian_eig(rho);
  const int n = static_cast<int>(rho.rows());
  const double lmax = n > 0 ? std::max(0.0, eig.eigenvalues(0)) : 0.0;
  const double floor = 4.0 * n * DBL_EPSILON * lmax;
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double lambda = eig.eigenvalues(k);
    if (lambda < -kSqrtNegativeTol)
      throw Error(ErrorKind::kNotPositive, "negative eigenvalue below -1e-12 in square root");
    if (lambda <= floor) continue;
    out += std::sqrt(lambda) * eig.eigenvectors.col(k) * eig.eigenvectors.col(k).adjoint();
  }
  return out;
}

double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw Error(ErrorKind::kDimensionMismatch, "fidelity operands differ in dimension");
  const ComplexMatrix product = psd_sqrt(rho) * psd_sqrt(sigma);
  return singular_values(product).sum();
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, Subsystem keep, Dims dims) {
  if (rho.rows() != rho.cols() || rho.rows() != dims.total())
    throw Error(ErrorKind::kDimensionMismatch, "partial_trace: d_A * d_B does not match matrix size");
  const int da = dims.a;
  const int db = dims.b;
  if (keep == Subsystem::kA) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j) {
        Complex acc = 0.0;
        for (int k = 0; k < db; ++k) acc += rho(i * db + k, j * db + k);
        out(i, j) = acc;
      }
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j) {
      Complex acc = 0.0;
      for (int k = 0; k < da; ++k) acc += rho(k * db + i, k * db + j);
      out(i, j) = acc;
    }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, Dims dims) {
  if (rho.rows() != rho.cols() || rho.rows() != dims.total())
    throw Error(ErrorKind::kDimensionMismatch, "partial_transpose: d_A * d_B does not match matrix size");
  const int db = dims.b;
  ComplexMatrix out(rho.rows(), rho.cols());
  for (int a1 = 0; a1 < dims.a; ++a1)
    for (int b1 = 0; b1 < db; ++b1)
      for (int a2 = 0; a2 < dims.a; ++a2)
        for (int b2 = 0; b2 < db; ++b2) out(a1 * db + b1, a2 * db + b2) = rho(a1 * db + b2, a2 * db + b1);
  return out;
}

ComplexMatrix support_projector(const ComplexMatrix& rho, double rank_tol) {
  const auto eig = hermitian_eig(rho);
  const int n = static_cast<int>(rho.rows());
  const int rank = support_rank(std::span<const double>(eig.eigenvalues.data(), static_cast<std::size_t>(n)), rank_tol);
  const auto basis = eig.eigenvectors.leftCols(rank);
  return basis * basis.adjoint();
}

ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y) {
  ComplexMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return out;
}

ComplexVector kron(const ComplexVector& x, const ComplexVector& y) {
  ComplexVector out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x(i) * y;
  return out;
}

namespace {

std::vector<Eigen::Index> permutation_map(std::span<const int> dims, std::span<const int> perm) {
  if (dims.size() != perm.size()) throw Error(ErrorKind::kDimensionMismatch, "permutation length differs from factor count");
  const std::size_t m = dims.size();
  Eigen::Index total = 1;
  for (int d : dims) total *= d;
  std::vector<int> out_dims(m);
  for (std::size_t k = 0; k < m; ++k) out_dims[k] = dims[static_cast<std::size_t>(perm[k])];

  std::vector<Eigen::Index> map(static_cast<std::size_t>(total));
  std::vector<int> digits(m, 0);
  for (Eigen::Index idx = 0; idx < total; ++idx) {
    Eigen::Index rem = idx;
    for (std::size_t k = m; k-- > 0;) {
      digits[k] = static_cast<int>(rem % dims[k]);
      rem /= dims[k];
    }
    Eigen::Index out = 0;
    for (std::size_t k = 0; k < m; ++k) out = out * out_dims[k] + digits[static_cast<std::size_t>(perm[k])];
    map[static_cast<std::size_t>(idx)] = out;
  }
  return map;
}

}  // namespace

ComplexMatrix permute_subsystems(const ComplexMatrix& mat, std::span<const int> dims, std::span<const int> perm) {
  const auto map = permutation_map(dims, perm);
  if (static_cast<std::size_t>(mat.rows()) != map.size() || mat.rows() != mat.cols())
    throw Error(ErrorKind::kDimensionMismatch, "matrix size does not match factor dimensions");
  ComplexMatrix out(mat.rows(), mat.cols());
  for (Eigen::Index r = 0; r < mat.rows(); ++r)
    for (Eigen::Index c = 0; c < mat.cols(); ++c)
      out(map[static_cast<std::size_t>(r)], map[static_cast<std::size_t>(c)]) = mat(r, c);
  return out;
}

ComplexVector permute_subsystems(const ComplexVector& v, std::span<const int> dims, std::span<const int> perm) {
  const auto map = permutation_map(dims, perm);
  if (static_cast<std::size_t>(v.size()) != map.size())
    throw Error(ErrorKind::kDimensionMismatch, "vector size does not match factor dimensions");
  ComplexVector out(v.size());
  for (Eigen::Index r = 0; r < v.size(); ++r) out(map[static_cast<std::size_t>(r)]) = v(r);
  return out;
}

SchmidtDecomposition schmidt_decompose(const ComplexVector& psi, Dims dims) {
  if (psi.size() != dims.total()) throw Error(ErrorKind::kDimensionMismatch, "state size differs from d_A * d_B");
  if (std::abs(psi.squaredNorm() - 1.0) > 1e-10) throw Error(ErrorKind::kNotNormalized, "pure state is not normalized");
  ComplexMatrix coeff(dims.a, dims.b);
  for (int a = 0; a < dims.a; ++a)
    for (int b = 0; b < dims.b; ++b) coeff(a, b) = psi(a * dims.b + b);
  const ComplexMatrix reduced = coeff * coeff.adjoint();
  const auto eig = hermitian_eig(reduced);
  const int rank = support_rank(std::span<const double>(eig.eigenvalues.data(), static_cast<std::size_t>(dims.a)));

  SchmidtDecomposition out;
  out.basis_a = eig.eigenvectors.leftCols(rank);
  out.basis_b.resize(dims.b, rank);
  for (int j = 0; j < rank; ++j) {
    const double lambda = eig.eigenvalues(j);
    out.coefficients.push_back(lambda);
    out.basis_b.col(j) = coeff.transpose() * eig.eigenvectors.col(j).conjugate() / std::sqrt(lambda);
  }
  return out;
}

}  // namespace dilutron

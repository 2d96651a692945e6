#include "dilutron/states.hpp"

#include <cmath>
#include <cstring>

#include <fmt/format.h>

#include "dilutron/error.hpp"
#include "dilutron/random.hpp"

namespace dilutron {

namespace {

constexpr double kStateTol = 1e-10;
constexpr double kNoiseBand = 1e-14;

void require_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorKind::kInput, "matrix contains a non-finite entry");
  }
}

ComplexMatrix reduced_of_vector(const ComplexVector& psi, Dims dims) {
  ComplexMatrix coeff(dims.a, dims.b);
  for (int a = 0; a < dims.a; ++a)
    for (int b = 0; b < dims.b; ++b) coeff(a, b) = psi(a * dims.b + b);
  return coeff * coeff.adjoint();
}

}  // namespace

DensityOperator DensityOperator::validate(const ComplexMatrix& raw, Dims dims) {
  if (dims.a < 1 || dims.b < 1) throw Error(ErrorKind::kDimensionMismatch, "dims must be positive");
  if (raw.rows() != raw.cols()) throw Error(ErrorKind::kNonSquare, "density matrix must be square");
  if (raw.rows() != dims.total())
    throw Error(ErrorKind::kDimensionMismatch,
                fmt::format("matrix is {}x{} but dims give {}", raw.rows(), raw.cols(), dims.total()));
  require_finite(raw);
  if (max_abs_deviation_from_hermitian(raw) > kStateTol)
    throw Error(ErrorKind::kNotHermitian, "density matrix is not Hermitian within 1e-10");

  ComplexMatrix m = 0.5 * (raw + raw.adjoint());
  const auto eig = hermitian_eig(m);
  const double min_ev = eig.eigenvalues(eig.eigenvalues.size() - 1);
  if (min_ev < -kStateTol)
    throw Error(ErrorKind::kNotPositive, fmt::format("eigenvalue {:.3e} is below -1e-10", min_ev));
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > kStateTol) throw Error(ErrorKind::kTraceNotOne, fmt::format("trace is {:.17g}", tr));

  if (min_ev < -kNoiseBand) {
    RealVector clamped = eig.eigenvalues.cwiseMax(0.0);
    m = eig.eigenvectors * clamped.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
    m = 0.5 * (m + m.adjoint()).eval();
  }
  const double tr2 = m.trace().real();
  if (std::abs(tr2 - 1.0) > kNoiseBand) m /= tr2;
  return DensityOperator(std::move(m), dims);
}

ComplexMatrix PureStateEnsemble::reconstruct() const {
  const int d = dims.total();
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < size(); ++i) out += weights[i] * states[i] * states[i].adjoint();
  return out;
}

void PureStateEnsemble::check() const {
  if (weights.size() != states.size()) throw Error(ErrorKind::kInput, "ensemble weights and states differ in length");
  if (weights.empty()) throw Error(ErrorKind::kInput, "ensemble is empty");
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!(weights[i] >= 0.0)) throw Error(ErrorKind::kInput, "ensemble weight is negative");
    total += weights[i];
    if (states[i].size() != dims.total())
      throw Error(ErrorKind::kDimensionMismatch, "ensemble member size differs from dims");
    if (std::abs(states[i].squaredNorm() - 1.0) > kStateTol)
      throw Error(ErrorKind::kNotNormalized, fmt::format("ensemble member {} is not normalized", i));
  }
  if (std::abs(total - 1.0) > kStateTol) throw Error(ErrorKind::kInput, "ensemble weights do not sum to 1");
}

double CqOperator::trace() const {
  double t = 0.0;
  for (const auto& b : blocks) t += b.trace().real();
  return t;
}

ComplexMatrix CqOperator::assemble() const {
  const int d = block_dim();
  const int n = register_dim();
  ComplexMatrix out = ComplexMatrix::Zero(n * d, n * d);
  for (int i = 0; i < n; ++i) out.block(i * d, i * d, d, d) = blocks[static_cast<std::size_t>(i)];
  return out;
}

ComplexMatrix CqOperator::register_marginal() const {
  const int n = register_dim();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) out(i, i) = blocks[static_cast<std::size_t>(i)].trace().real();
  return out;
}

void CqOperator::check() const {
  if (blocks.empty()) throw Error(ErrorKind::kInput, "c-q operator has no blocks");
  const int d = block_dim();
  for (const auto& b : blocks) {
    if (b.rows() != d || b.cols() != d) throw Error(ErrorKind::kDimensionMismatch, "c-q blocks differ in size");
    const RealVector ev = hermitian_eigenvalues(b);
    if (ev(ev.size() - 1) < -kStateTol) throw Error(ErrorKind::kNotPositive, "c-q block is not PSD");
  }
  if (trace() > 1.0 + kStateTol) throw Error(ErrorKind::kTraceNotOne, "c-q operator trace exceeds 1");
}

PureState mes(int rank, Dims dims) {
  if (rank < 1) throw Error(ErrorKind::kParameterOutOfRange, "MES rank must be positive");
  if (rank > dims.min()) throw Error(ErrorKind::kRankTooLarge, "MES rank exceeds min(d_A, d_B)");
  PureState psi{ComplexVector::Zero(dims.total()), dims};
  const double amp = 1.0 / std::sqrt(static_cast<double>(rank));
  for (int i = 0; i < rank; ++i) psi.amplitudes(i * dims.b + i) = amp;
  return psi;
}

DensityOperator mes_density(int rank, Dims dims) { return pure_density(mes(rank, dims)); }

DensityOperator pure_density(const PureState& psi) {
  return DensityOperator::validate(psi.density(), psi.dims);
}

DensityOperator product_density(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator::validate(kron(a.matrix(), b.matrix()), Dims{a.dim(), b.dim()});
}

DensityOperator random_density(Dims dims, int rank, std::uint64_t seed) {
  const int d = dims.total();
  if (rank < 1 || rank > d) throw Error(ErrorKind::kParameterOutOfRange, "rank must lie in [1, d]");
  Rng rng = make_rng(seed);
  const ComplexMatrix g = complex_gaussian(rng, d, rank);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator::validate(rho, dims);
}

PureState random_pure_state(Dims dims, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  ComplexVector v = complex_gaussian(rng, dims.total(), 1).col(0);
  v.normalize();
  return PureState{v, dims};
}

DensityOperator isotropic_state(int d, double p) {
  if (d < 2) throw Error(ErrorKind::kParameterOutOfRange, "isotropic state needs d >= 2");
  const double lo = -1.0 / (static_cast<double>(d) * d - 1.0);
  if (!(p >= lo && p <= 1.0)) throw Error(ErrorKind::kParameterOutOfRange, "isotropic parameter p outside PSD range");
  const Dims dims{d, d};
  const ComplexMatrix phi = mes(d, dims).density();
  const ComplexMatrix mixed = ComplexMatrix::Identity(d * d, d * d) / static_cast<double>(d * d);
  return DensityOperator::validate(p * phi + (1.0 - p) * mixed, dims);
}

DensityOperator werner_state(int d, double p) {
  if (d < 2) throw Error(ErrorKind::kParameterOutOfRange, "Werner state needs d >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::kParameterOutOfRange, "Werner parameter p outside [0, 1]");
  const int n = d * d;
  ComplexMatrix swap = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) swap(i * d + j, j * d + i) = 1.0;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix anti = 0.5 * (id - swap) / (0.5 * d * (d - 1));
  const ComplexMatrix sym = 0.5 * (id + swap) / (0.5 * d * (d + 1));
  return DensityOperator::validate(p * anti + (1.0 - p) * sym, Dims{d, d});
}

ComplexMatrix random_isometry(int rows, int cols, std::uint64_t seed) {
  if (cols < 1 || cols > rows) throw Error(ErrorKind::kParameterOutOfRange, "isometry needs 1 <= cols <= rows");
  Rng rng = make_rng(seed);
  const ComplexMatrix g = complex_gaussian(rng, rows, cols);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  for (int j = 0; j < cols; ++j) {
    const Complex rjj = qr.matrixQR()(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return q;
}

ComplexMatrix identity_isometry(int rows, int cols) { return ComplexMatrix::Identity(rows, cols); }

int state_rank(const DensityOperator& rho) {
  const RealVector ev = hermitian_eigenvalues(rho.matrix());
  return support_rank(std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())));
}

ComplexMatrix weighted_eigenbasis(const DensityOperator& rho) {
  const auto eig = hermitian_eig(rho.matrix());
  const int d = rho.dim();
  const int rank = support_rank(std::span<const double>(eig.eigenvalues.data(), static_cast<std::size_t>(d)));
  ComplexMatrix basis(rank, d);
  for (int j = 0; j < rank; ++j)
    basis.row(j) = std::sqrt(std::max(0.0, eig.eigenvalues(j))) * eig.eigenvectors.col(j).transpose();
  return basis;
}

PureStateEnsemble ensemble_from_members(const ComplexMatrix& rows, Dims dims) {
  if (rows.cols() != dims.total()) throw Error(ErrorKind::kDimensionMismatch, "member length differs from d_A * d_B");
  PureStateEnsemble ens;
  ens.dims = dims;
  double kept = 0.0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    const double p = rows.row(i).squaredNorm();
    if (p < kWeightTol) continue;
    ens.weights.push_back(p);
    ens.states.push_back(rows.row(i).transpose() / std::sqrt(p));
    kept += p;
  }
  for (auto& w : ens.weights) w /= kept;
  return ens;
}

PureStateEnsemble ensemble_from_isometry(const DensityOperator& rho, const ComplexMatrix& isometry) {
  const ComplexMatrix basis = weighted_eigenbasis(rho);
  const Eigen::Index rank = basis.rows();
  if (isometry.cols() != rank || isometry.rows() < rank)
    throw Error(ErrorKind::kRankMismatch,
                fmt::format("isometry is {}x{} but rank(rho) = {}", isometry.rows(), isometry.cols(), rank));
  const ComplexMatrix gram = isometry.adjoint() * isometry;
  if ((gram - ComplexMatrix::Identity(rank, rank)).cwiseAbs().maxCoeff() > 1e-9)
    throw Error(ErrorKind::kNotIsometry, "V^dagger V deviates from identity beyond 1e-9");
  return ensemble_from_members(isometry * basis, rho.dims());
}

CqOperator cq_extension(const PureStateEnsemble& ensemble) {
  CqOperator cq;
  cq.blocks.reserve(ensemble.size());
  for (std::size_t i = 0; i < ensemble.size(); ++i)
    cq.blocks.push_back(ensemble.weights[i] * reduced_of_vector(ensemble.states[i], ensemble.dims));
  return cq;
}

ComplexMatrix cq_tripartite(const PureStateEnsemble& ensemble) {
  const int d = ensemble.dims.total();
  const int n = static_cast<int>(ensemble.size());
  ComplexMatrix out = ComplexMatrix::Zero(n * d, n * d);
  for (int i = 0; i < n; ++i) {
    const auto& s = ensemble.states[static_cast<std::size_t>(i)];
    out.block(i * d, i * d, d, d) = ensemble.weights[static_cast<std::size_t>(i)] * s * s.adjoint();
  }
  return out;
}

DensityOperator tensor_power(const DensityOperator& rho, int n) {
  if (n < 1) throw Error(ErrorKind::kParameterOutOfRange, "copy count must be positive");
  ComplexMatrix acc = rho.matrix();
  for (int k = 1; k < n; ++k) acc = kron(acc, rho.matrix());
  std::vector<int> factor_dims;
  std::vector<int> perm;
  for (int k = 0; k < n; ++k) {
    factor_dims.push_back(rho.dims().a);
    factor_dims.push_back(rho.dims().b);
  }
  for (int k = 0; k < n; ++k) perm.push_back(2 * k);
  for (int k = 0; k < n; ++k) perm.push_back(2 * k + 1);
  int da = 1;
  int db = 1;
  for (int k = 0; k < n; ++k) {
    da *= rho.dims().a;
    db *= rho.dims().b;
  }
  return DensityOperator::validate(permute_subsystems(acc, factor_dims, perm), Dims{da, db});
}

PureStateEnsemble product_ensemble(const PureStateEnsemble& first, const PureStateEnsemble& second) {
  const std::vector<int> factor_dims{first.dims.a, first.dims.b, second.dims.a, second.dims.b};
  const std::vector<int> perm{0, 2, 1, 3};
  PureStateEnsemble out;
  out.dims = Dims{first.dims.a * second.dims.a, first.dims.b * second.dims.b};
  double kept = 0.0;
  for (std::size_t i = 0; i < first.size(); ++i)
    for (std::size_t k = 0; k < second.size(); ++k) {
      const double w = first.weights[i] * second.weights[k];
      if (w < kWeightTol) continue;
      out.weights.push_back(w);
      out.states.push_back(permute_subsystems(kron(first.states[i], second.states[k]), factor_dims, perm));
      kept += w;
    }
  for (auto& w : out.weights) w /= kept;
  return out;
}

std::string digest(const DensityOperator& rho) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::int32_t dims[2] = {rho.dims().a, rho.dims().b};
  mix(dims, sizeof dims);
  for (Eigen::Index i = 0; i < rho.matrix().size(); ++i) {
    const double parts[2] = {rho.matrix().data()[i].real(), rho.matrix().data()[i].imag()};
    mix(parts, sizeof parts);
  }
  return fmt::format("{:016x}", h);
}

}  // namespace dilutron

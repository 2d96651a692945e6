#include "dilutron/entropies.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "dilutron/error.hpp"

namespace dilutron {

namespace {

constexpr double kProfileTol = 1e-10;

int rank_of(const ComplexMatrix& m, double rank_tol) {
  const RealVector ev = hermitian_eigenvalues(m);
  return support_rank(std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())), rank_tol);
}

double entropy_of_spectrum(const RealVector& ev, double rank_tol) {
  const int rank = support_rank(std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())), rank_tol);
  double s = 0.0;
  for (int k = 0; k < rank; ++k) s -= ev(k) * std::log2(ev(k));
  return s;
}

}  // namespace

double ExtendedReal::value() const {
  if (kind_ != Kind::kFinite) throw Error(ErrorKind::kParameterOutOfRange, "value() on an infinite extended real");
  return value_;
}

ExtendedReal ExtendedReal::operator-() const {
  switch (kind_) {
    case Kind::kFinite: return finite(-value_);
    case Kind::kPlusInfinity: return minus_infinity();
    case Kind::kMinusInfinity: return plus_infinity();
  }
  return *this;
}

std::string ExtendedReal::to_string() const {
  switch (kind_) {
    case Kind::kFinite: return fmt::format("{:.17g}", value_);
    case Kind::kPlusInfinity: return "inf";
    case Kind::kMinusInfinity: return "-inf";
  }
  return {};
}

std::weak_ordering operator<=>(const ExtendedReal& x, const ExtendedReal& y) {
  if (x.kind_ != y.kind_) return static_cast<int>(x.kind_) <=> static_cast<int>(y.kind_);
  if (x.kind_ != ExtendedReal::Kind::kFinite) return std::weak_ordering::equivalent;
  if (x.value_ < y.value_) return std::weak_ordering::less;
  if (x.value_ > y.value_) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

void canonicalize_spectrum(std::vector<double>& spectrum, double rank_tol) {
  const int rank = support_rank(spectrum, rank_tol);
  double total = 0.0;
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    if (static_cast<int>(j) >= rank || spectrum[j] < 0.0) spectrum[j] = 0.0;
    total += spectrum[j];
  }
  if (total > 0.0)
    for (auto& x : spectrum) x /= total;
}

SpectralProfile SpectralProfile::from_ensemble(const PureStateEnsemble& ensemble, double rank_tol) {
  SpectralProfile profile;
  profile.weights = ensemble.weights;
  const Dims dims = ensemble.dims;
  for (const auto& psi : ensemble.states) {
    ComplexMatrix coeff(dims.a, dims.b);
    for (int a = 0; a < dims.a; ++a)
      for (int b = 0; b < dims.b; ++b) coeff(a, b) = psi(a * dims.b + b);
    const RealVector ev = hermitian_eigenvalues(coeff * coeff.adjoint());
    std::vector<double> spectrum(ev.data(), ev.data() + ev.size());
    canonicalize_spectrum(spectrum, rank_tol);
    profile.spectra.push_back(std::move(spectrum));
  }
  return profile;
}

void SpectralProfile::check() const {
  if (weights.size() != spectra.size() || weights.empty())
    throw Error(ErrorKind::kInput, "profile weights and spectra differ in length");
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0)) throw Error(ErrorKind::kInput, "profile weight is negative");
    total += weights[i];
    const auto& s = spectra[i];
    double sum = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (s[j] < 0.0) throw Error(ErrorKind::kInput, fmt::format("spectrum {} has a negative entry", i));
      if (j > 0 && s[j] > s[j - 1]) throw Error(ErrorKind::kInput, fmt::format("spectrum {} is not non-increasing", i));
      sum += s[j];
    }
    if (std::abs(sum - 1.0) > kProfileTol) throw Error(ErrorKind::kInput, fmt::format("spectrum {} does not sum to 1", i));
  }
  if (std::abs(total - 1.0) > kProfileTol) throw Error(ErrorKind::kInput, "profile weights do not sum to 1");
}

int SpectralProfile::max_support() const {
  int best = 0;
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    best = std::max(best, support_rank(spectra[i], 0.0));
  }
  return best;
}

SmoothingBudget SmoothingBudget::make(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw Error(ErrorKind::kParameterOutOfRange, "smoothing budget must lie in [0, 1]");
  return SmoothingBudget{eps};
}

SmoothingBudget SmoothingBudget::saturating(double eps) { return SmoothingBudget{std::clamp(eps, 0.0, 1.0)}; }

double SmoothedRank::log2_value() const { return rank <= 1 ? 0.0 : std::log2(static_cast<double>(rank)); }

ExtendedReal s0_relative(const ComplexMatrix& rho, const ComplexMatrix& sigma, double rank_tol) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw Error(ErrorKind::kDimensionMismatch, "S_0 operands differ in dimension");
  const ComplexMatrix proj = support_projector(rho, rank_tol);
  const double overlap = (proj * sigma).trace().real();
  if (overlap <= rank_tol) return ExtendedReal::plus_infinity();
  return ExtendedReal::finite(-std::log2(overlap));
}

ExtendedReal h0_conditional_given(const DensityOperator& rho_ab, const DensityOperator& sigma_b, double rank_tol) {
  if (sigma_b.dim() != rho_ab.dims().b) throw Error(ErrorKind::kDimensionMismatch, "sigma_B dimension differs from d_B");
  const ComplexMatrix id = ComplexMatrix::Identity(rho_ab.dims().a, rho_ab.dims().a);
  return -s0_relative(rho_ab.matrix(), kron(id, sigma_b.matrix()), rank_tol);
}

double h0_conditional(const ComplexMatrix& rho, Dims dims, Subsystem conditioning, double rank_tol) {
  const ComplexMatrix proj = support_projector(rho, rank_tol);
  const ComplexMatrix reduced = partial_trace(proj, conditioning, dims);
  const RealVector ev = hermitian_eigenvalues(reduced);
  if (!(ev(0) > 0.0)) throw Error(ErrorKind::kParameterOutOfRange, "H_0 of the zero operator");
  return std::log2(ev(0));
}

double h0_conditional(const DensityOperator& rho_ab, double rank_tol) {
  return h0_conditional(rho_ab.matrix(), rho_ab.dims(), Subsystem::kB, rank_tol);
}

double h0_cq(const CqOperator& rho_ra, double rank_tol) {
  int best = 0;
  for (const auto& block : rho_ra.blocks) best = std::max(best, rank_of(block, rank_tol));
  if (best == 0) throw Error(ErrorKind::kParameterOutOfRange, "H_0 of the zero c-q operator");
  return std::log2(static_cast<double>(best));
}

SmoothedRank smoothed_rank(const SpectralProfile& profile, SmoothingBudget eps) {
  if (eps.epsilon >= 1.0) return SmoothedRank{0, true};
  std::size_t width = 0;
  for (const auto& s : profile.spectra) width = std::max(width, s.size());
  // tails[m] = sum_i p_i sum_{j >= m} lambda_j, accumulated from the back.
  std::vector<double> tails(width + 1, 0.0);
  for (std::size_t i = 0; i < profile.spectra.size(); ++i) {
    const auto& s = profile.spectra[i];
    double acc = 0.0;
    for (std::size_t j = s.size(); j-- > 0;) {
      acc += s[j];
      tails[j] += profile.weights[i] * acc;
    }
  }
  for (std::size_t m = 1; m <= width; ++m)
    if (tails[m] <= eps.epsilon + kMassSlack) return SmoothedRank{static_cast<int>(m), false};
  return SmoothedRank{static_cast<int>(width), false};
}

double h0_smoothed_cq(const SpectralProfile& profile, SmoothingBudget eps) {
  return smoothed_rank(profile, eps).log2_value();
}

SmoothedRank projector_rank(const SpectralProfile& profile, SmoothingBudget eps) {
  if (eps.epsilon >= 1.0) return SmoothedRank{0, true};
  std::size_t width = 0;
  for (const auto& s : profile.spectra) width = std::max(width, s.size());
  const double target = 1.0 - eps.epsilon - kMassSlack;
  for (std::size_t m = 1; m <= width; ++m) {
    double head = 0.0;
    for (std::size_t i = 0; i < profile.spectra.size(); ++i) {
      const auto& s = profile.spectra[i];
      double part = 0.0;
      for (std::size_t j = 0; j < std::min(m, s.size()); ++j) part += s[j];
      head += profile.weights[i] * part;
    }
    if (head >= target) return SmoothedRank{static_cast<int>(m), false};
  }
  return SmoothedRank{static_cast<int>(width), false};
}

double e_epsilon(const SpectralProfile& profile, SmoothingBudget eps) {
  return projector_rank(profile, eps).log2_value();
}

double von_neumann(const ComplexMatrix& rho, double rank_tol) {
  return entropy_of_spectrum(hermitian_eigenvalues(rho), rank_tol);
}

ExtendedReal relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma, double rank_tol) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw Error(ErrorKind::kDimensionMismatch, "relative entropy operands differ in dimension");
  const auto rho_eig = hermitian_eig(rho);
  const auto sigma_eig = hermitian_eig(sigma);
  const auto n = static_cast<std::size_t>(rho.rows());
  const int rho_rank = support_rank(std::span<const double>(rho_eig.eigenvalues.data(), n), rank_tol);
  const int sigma_rank = support_rank(std::span<const double>(sigma_eig.eigenvalues.data(), n), rank_tol);

  const auto rho_basis = rho_eig.eigenvectors.leftCols(rho_rank);
  const auto sigma_basis = sigma_eig.eigenvectors.leftCols(sigma_rank);
  // Tr[Pi_rho (1 - Pi_sigma)] measures the part of supp(rho) outside supp(sigma).
  const double outside = static_cast<double>(rho_rank) - (sigma_basis.adjoint() * rho_basis).squaredNorm();
  if (outside > rank_tol) return ExtendedReal::plus_infinity();

  double value = 0.0;
  for (int k = 0; k < rho_rank; ++k) value += rho_eig.eigenvalues(k) * std::log2(rho_eig.eigenvalues(k));
  for (int l = 0; l < sigma_rank; ++l) {
    const auto v = sigma_eig.eigenvectors.col(l);
    const double weight = (v.adjoint() * rho * v)(0, 0).real();
    value -= weight * std::log2(sigma_eig.eigenvalues(l));
  }
  return ExtendedReal::finite(value);
}

double conditional_entropy(const ComplexMatrix& rho, Dims dims, Subsystem conditioning) {
  return von_neumann(rho) - von_neumann(partial_trace(rho, conditioning, dims));
}

double cq_conditional_entropy(const CqOperator& rho_ra) {
  return conditional_entropy(rho_ra.assemble(), Dims{rho_ra.register_dim(), rho_ra.block_dim()}, Subsystem::kA);
}

}  // namespace dilutron

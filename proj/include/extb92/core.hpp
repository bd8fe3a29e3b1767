#pragma once
// Dense complex linear algebra and entropy functionals shared by every layer:
// basis kets, the two-label superposition state, Kraus-map application,
// Hermitian eigendecomposition, von Neumann / Shannon / binary entropies and
// the generalized Pauli (shift/clock) operator basis.
//
// Matrices are Eigen dynamic complex doubles. All entropies are in bits.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace extb92 {

using cx = std::complex<double>;
using cmatrix = Eigen::MatrixXcd;
using cvector = Eigen::VectorXcd;

// numerical contract shared across the library
inline constexpr double weight_floor = 1e-12;    // weights at or below this are treated as empty
inline constexpr double prob_slack = 1e-9;       // clamping slack around [0, 1]
inline constexpr double hermiticity_tol = 1e-10; // max |M - M^dag| entry accepted as Hermitian
inline constexpr double channel_tol = 1e-9;      // max deviation of sum E^dag E from identity
inline constexpr double eigen_negative_tol = 1e-10; // spectrum this far below zero is rounding

// error taxonomy; the CLI maps these onto process exit codes
struct invalid_channel_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct invalid_state_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct stats_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct inconsistent_stats_error : stats_error {
  using stats_error::stats_error;
};
struct degenerate_stats_error : stats_error {
  using stats_error::stats_error;
};
struct stats_format_error : stats_error {
  using stats_error::stats_error;
};
struct insufficient_samples_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct no_sign_change_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// dim >= 2 with two distinct basis labels i, j below dim
struct ProtocolConfig {
  int dim = 2;
  int i = 0;
  int j = 1;

  void validate() const {
    if (dim < 2) throw std::invalid_argument("dim must be at least 2, got " + std::to_string(dim));
    if (i < 0 || i >= dim || j < 0 || j >= dim)
      throw std::invalid_argument("labels i, j must lie in [0, dim)");
    if (i == j) throw std::invalid_argument("labels i and j must differ");
  }
};

// finite probability distribution; construction clamps entries within
// prob_slack of [0, 1] and rejects anything farther out
struct ProbDist {
  std::vector<double> weights;

  static ProbDist from(std::vector<double> w, double sum_tol = prob_slack) {
    double sum = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k] < -prob_slack || w[k] > 1.0 + prob_slack)
        throw std::invalid_argument("probability entry " + std::to_string(k) + " outside [0, 1]: " +
                                    std::to_string(w[k]));
      w[k] = std::clamp(w[k], 0.0, 1.0);
      sum += w[k];
    }
    if (std::abs(sum - 1.0) > sum_tol)
      throw std::invalid_argument("probabilities sum to " + std::to_string(sum) + ", expected 1");
    return ProbDist{std::move(w)};
  }
};

namespace detail {

// -p log2 p with the conventional zero limit
inline double plog(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

inline double shannon_raw(const std::vector<double>& w) {
  double h = 0.0;
  for (double p : w) h += plog(p);
  return h;
}

}  // namespace detail

inline cvector ket(int dim, int index) {
  if (dim < 1) throw std::invalid_argument("ket dimension must be positive");
  if (index < 0 || index >= dim) throw std::invalid_argument("ket index outside [0, dim)");
  cvector v = cvector::Zero(dim);
  v(index) = 1.0;
  return v;
}

// (|i> + |j>)/sqrt(2)
inline cvector superposition_phi(const ProtocolConfig& cfg) {
  cfg.validate();
  cvector v = cvector::Zero(cfg.dim);
  v(cfg.i) = 1.0 / std::numbers::sqrt2;
  v(cfg.j) = 1.0 / std::numbers::sqrt2;
  return v;
}

// trace-preserving operator set: sum of E^dag E equals the identity
struct KrausSet {
  std::vector<cmatrix> ops;

  int dim() const { return ops.empty() ? 0 : static_cast<int>(ops.front().rows()); }

  void validate(double tol = channel_tol) const {
    if (ops.empty()) throw invalid_channel_error("Kraus set is empty");
    const int d = dim();
    cmatrix sum = cmatrix::Zero(d, d);
    for (const cmatrix& e : ops) {
      if (e.rows() != d || e.cols() != d)
        throw invalid_channel_error("Kraus operators must be square with a common dimension");
      sum += e.adjoint() * e;
    }
    const double dev = (sum - cmatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (dev > tol)
      throw invalid_channel_error("Kraus set is not trace preserving, deviation " + std::to_string(dev));
  }
};

// sum_k E_k rho E_k^dag. Positivity of rho is assumed, not verified.
inline cmatrix apply_channel(const KrausSet& kraus, const cmatrix& rho) {
  kraus.validate();
  const int d = kraus.dim();
  if (rho.rows() != d || rho.cols() != d)
    throw std::invalid_argument("state dimension does not match the Kraus operators");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > channel_tol)
    throw std::invalid_argument("input state is not Hermitian");
  if (std::abs(rho.trace() - cx(1.0)) > channel_tol)
    throw std::invalid_argument("input state does not have unit trace");
  cmatrix out = cmatrix::Zero(d, d);
  for (const cmatrix& e : kraus.ops) out += e * rho * e.adjoint();
  return out;
}

// real spectrum of a Hermitian matrix, descending
inline std::vector<double> eigenvalues_hermitian(const cmatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigendecomposition needs a square matrix");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > hermiticity_tol)
    throw std::invalid_argument("matrix is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<cmatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k) out[static_cast<std::size_t>(k)] = ev(ev.size() - 1 - k);
  return out;
}

// S(rho) = -sum lambda log2 lambda over the spectrum. Eigenvalues within
// eigen_negative_tol below zero are rounding noise and count as zero;
// anything lower means the argument was not a state.
inline double von_neumann_entropy(const cmatrix& rho) {
  if (std::abs(rho.trace() - cx(1.0)) > prob_slack)
    throw std::invalid_argument("density matrix must have unit trace");
  double h = 0.0;
  for (double lam : eigenvalues_hermitian(rho)) {
    if (lam < -eigen_negative_tol)
      throw invalid_state_error("density matrix has eigenvalue " + std::to_string(lam));
    if (lam > 0.0) h += detail::plog(lam);
  }
  return h;
}

// H2(p); arguments within weight_floor of [0, 1] are clamped
inline double binary_entropy(double p) {
  if (p < -weight_floor || p > 1.0 + weight_floor)
    throw std::invalid_argument("binary entropy argument outside [0, 1]: " + std::to_string(p));
  p = std::clamp(p, 0.0, 1.0);
  return detail::plog(p) + detail::plog(1.0 - p);
}

inline double shannon_entropy(const ProbDist& dist) { return detail::shannon_raw(dist.weights); }

// generalized Pauli basis {X^a Z^b}: (X^a Z^b)|k> = w^{bk} |k+a mod dim>,
// w = exp(2 pi i / dim). Index m = a*dim + b, so m = 0 is the identity.
// Hilbert-Schmidt orthogonal: Tr(W_m^dag W_n) = dim * delta_mn.
inline std::vector<cmatrix> weyl_operators(int dim) {
  if (dim < 1) throw std::invalid_argument("weyl_operators needs dim >= 1");
  std::vector<cmatrix> ws;
  ws.reserve(static_cast<std::size_t>(dim) * dim);
  const double step = 2.0 * std::numbers::pi / dim;
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      cmatrix w = cmatrix::Zero(dim, dim);
      for (int k = 0; k < dim; ++k) {
        const long long phase = static_cast<long long>(b) * k % dim;
        w((k + a) % dim, k) = std::polar(1.0, step * static_cast<double>(phase));
      }
      ws.push_back(std::move(w));
    }
  return ws;
}

}  // namespace extb92

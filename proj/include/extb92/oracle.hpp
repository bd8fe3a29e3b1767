#pragma once
// Exact Stinespring-dilation reference for the estimation bound. Given the
// attack's Kraus operators, build the ancilla vectors conditioned on each
// send/outcome pair, assemble the exact post-measurement joint state of key
// bit and environment, compute its conditional entropy by dense
// eigendecomposition, and check the estimation-side bound against it.

#include "extb92/keyrate.hpp"
#include "extb92/rng.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace extb92 {

// largest joint-state side accepted for dense eigendecomposition
inline constexpr int oracle_max_side = 512;

// Ancilla vectors e^a_b with component k equal to <b|E_k|a>, for the two
// send states a in {i, j} and every full-basis outcome b. Their Gram data
// is exactly what the estimation layer reconstructs from the table.
struct EveVectors {
  ProtocolConfig cfg;
  int ancilla_dim = 0;
  std::vector<cvector> from_i, from_j;  // indexed by outcome b

  cvector f(int b) const { return from_i[static_cast<std::size_t>(b)] + from_j[static_cast<std::size_t>(b)]; }
  cvector g() const { return from_i[static_cast<std::size_t>(cfg.i)] - from_i[static_cast<std::size_t>(cfg.j)]; }
  cvector h() const { return f(cfg.i) - f(cfg.j); }
};

inline EveVectors eve_vectors(const KrausSet& kraus, const ProtocolConfig& cfg) {
  cfg.validate();
  kraus.validate();
  if (kraus.dim() != cfg.dim)
    throw std::invalid_argument("channel dimension does not match the protocol dimension");
  EveVectors ev;
  ev.cfg = cfg;
  ev.ancilla_dim = static_cast<int>(kraus.ops.size());
  ev.from_i.resize(static_cast<std::size_t>(cfg.dim));
  ev.from_j.resize(static_cast<std::size_t>(cfg.dim));
  for (int b = 0; b < cfg.dim; ++b) {
    cvector vi(ev.ancilla_dim), vj(ev.ancilla_dim);
    for (int k = 0; k < ev.ancilla_dim; ++k) {
      vi(k) = kraus.ops[static_cast<std::size_t>(k)](b, cfg.i);
      vj(k) = kraus.ops[static_cast<std::size_t>(k)](b, cfg.j);
    }
    ev.from_i[static_cast<std::size_t>(b)] = std::move(vi);
    ev.from_j[static_cast<std::size_t>(b)] = std::move(vj);
  }
  // trace preservation shows up as unit total outcome mass per send state
  double mass_i = 0.0, mass_j = 0.0;
  for (int b = 0; b < cfg.dim; ++b) {
    mass_i += ev.from_i[static_cast<std::size_t>(b)].squaredNorm();
    mass_j += ev.from_j[static_cast<std::size_t>(b)].squaredNorm();
  }
  if (std::abs(mass_i - 1.0) > prob_slack || std::abs(mass_j - 1.0) > prob_slack)
    throw invalid_channel_error("conditional ancilla mass does not sum to one");
  return ev;
}

struct ExactState {
  cmatrix rho_ae;          // block diagonal in the key bit, side 2 * ancilla_dim
  double normalizer = 0.0; // conclusive mass before normalization
};

// Post-measurement key-bit/environment state. The bit-0 block collects the
// conclusive branches of the basis measurement on the first send state, the
// bit-1 block the conclusive branches of the partial measurement; weights
// mirror the estimation layer's term weights, so the two normalizers agree.
inline ExactState exact_rho_ae(const EveVectors& ev) {
  const int m = ev.ancilla_dim;
  if (2 * m > oracle_max_side)
    throw std::invalid_argument("joint state side " + std::to_string(2 * m) +
                                " exceeds the dense eigendecomposition limit of " +
                                std::to_string(oracle_max_side));
  const int i = ev.cfg.i, j = ev.cfg.j;
  cmatrix blk0 = cmatrix::Zero(m, m), blk1 = cmatrix::Zero(m, m);
  auto proj = [](const cvector& v) { return cmatrix(v * v.adjoint()); };
  for (int b = 0; b < ev.cfg.dim; ++b) {
    if (b == i || b == j) continue;
    blk0 += proj(ev.from_i[static_cast<std::size_t>(b)]);
    blk1 += 0.5 * proj(ev.f(b));
  }
  blk0 += 0.5 * proj(ev.from_i[static_cast<std::size_t>(j)]) + 0.25 * proj(ev.g());
  blk1 += 0.25 * proj(ev.f(j)) + 0.125 * proj(ev.h());
  const double n = blk0.trace().real() + blk1.trace().real();
  if (n <= 1e-15) throw degenerate_stats_error("conclusive mass vanishes; nothing to condition on");
  ExactState out;
  out.normalizer = n;
  out.rho_ae = cmatrix::Zero(2 * m, 2 * m);
  out.rho_ae.topLeftCorner(m, m) = blk0 / n;
  out.rho_ae.bottomRightCorner(m, m) = blk1 / n;
  return out;
}

// S(A|E) = S(rho_AE) - S(rho_E) on the block-diagonal joint state
inline double exact_conditional_entropy(const cmatrix& rho_ae) {
  if (rho_ae.rows() != rho_ae.cols() || rho_ae.rows() % 2 != 0)
    throw std::invalid_argument("joint state must be square with an even side");
  const Eigen::Index m = rho_ae.rows() / 2;
  const cmatrix rho_e = rho_ae.topLeftCorner(m, m) + rho_ae.bottomRightCorner(m, m);
  return von_neumann_entropy(rho_ae) - von_neumann_entropy(rho_e);
}

// the two quantities the table cannot fix, evaluated from the dilation
struct TrueUnobservables {
  double x = 0.0;  // Re<e^i_i | e^j_j>
  double y = 0.0;  // Re<e^i_j | e^j_i>
};

inline TrueUnobservables true_unobservables(const EveVectors& ev) {
  const auto i = static_cast<std::size_t>(ev.cfg.i);
  const auto j = static_cast<std::size_t>(ev.cfg.j);
  return TrueUnobservables{ev.from_i[i].dot(ev.from_j[j]).real(),
                           ev.from_i[j].dot(ev.from_j[i]).real()};
}

struct BoundReport {
  double exact = 0.0;            // conditional entropy of the exact joint state
  double bound_at_true = 0.0;    // estimation bound evaluated at the true (x, y)
  double bound_minimized = 0.0;  // estimation bound after minimizing over (x, y)
  double x_true = 0.0, y_true = 0.0;
  double k_from_stats = 0.0;
  double normalizer_exact = 0.0, normalizer_stats = 0.0;
  bool pass = false;
};

// Soundness check of the estimation chain against the dilation:
// bound_minimized <= bound_at_true <= exact, each within ip_slack.
inline BoundReport verify_bound(const KrausSet& kraus, const ProtocolConfig& cfg) {
  const ObservedStats st = stats_from_channel(kraus, cfg);
  const InnerProductEstimates est = estimate_inner_products(st);
  const EveVectors ev = eve_vectors(kraus, cfg);
  const TrueUnobservables tu = true_unobservables(ev);
  BoundReport rep;
  rep.x_true = tu.x;
  rep.y_true = tu.y;
  rep.k_from_stats = est.k_constraint;
  const EntropyTermSet at_true = build_entropy_terms(st, est, tu.x, tu.y);
  rep.bound_at_true = entropy_bound(at_true.terms, at_true.normalizer);
  rep.normalizer_stats = at_true.normalizer;
  const MinimizeResult m = minimize_entropy(st, est);
  rep.bound_minimized = m.s_min;
  const ExactState ex = exact_rho_ae(ev);
  rep.normalizer_exact = ex.normalizer;
  rep.exact = exact_conditional_entropy(ex.rho_ae);
  rep.pass = rep.bound_minimized <= rep.bound_at_true + ip_slack &&
             rep.bound_at_true <= rep.exact + ip_slack;
  return rep;
}

// Haar-random isometry from dimension dim to dim * num_ops, cut into Kraus
// blocks: complex Gaussian matrix, thin QR, then the phase of each R
// diagonal folded into Q so the distribution is exactly invariant.
inline KrausSet random_kraus(int dim, int num_ops, std::uint64_t seed) {
  if (dim < 1 || num_ops < 1) throw std::invalid_argument("random_kraus needs positive sizes");
  SplitMix64 rng(seed);
  const int rows = dim * num_ops;
  cmatrix a(rows, dim);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < dim; ++c) a(r, c) = cx(rng.next_gaussian(), rng.next_gaussian());
  const Eigen::HouseholderQR<cmatrix> qr(a);
  cmatrix q = qr.householderQ() * cmatrix::Identity(rows, dim);
  const cmatrix r = qr.matrixQR().topRows(dim).triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    const cx d = r(c, c);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(c) *= d / mag;
  }
  KrausSet out;
  out.ops.reserve(static_cast<std::size_t>(num_ops));
  for (int k = 0; k < num_ops; ++k) out.ops.push_back(q.middleRows(k * dim, dim));
  out.validate();
  return out;
}

}  // namespace extb92

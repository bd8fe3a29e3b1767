#pragma once
// Estimation chain from the observed table to the asymptotic key rate:
// reconstruct the Gram data of the attack's conditional ancilla states,
// lower-bound the conditional entropy S(A|E) term by term, minimize over
// the single unobservable degree of freedom (the pair (x, y) is tied by
// x + y = k_constraint), subtract the reconciliation cost H(A|B).
//
// Determinism contract: every function here is a pure, fixed-order floating
// point computation, so identical inputs give bit-identical outputs. The
// bound accumulator groups runs of identical adjacent terms and scales by
// the run length, which also makes symmetric-channel evaluation O(1) in the
// number of identical terms; it is the only accumulation path, so grouped
// and ungrouped inputs cannot disagree.

#include "extb92/channels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace extb92 {

inline constexpr double norm_floor = -1e-6;     // reconstructed norms below this are a hard error
inline constexpr double ip_slack = 1e-9;        // Cauchy-Schwarz / constraint-box slack
inline constexpr double minimize_step_tol = 1e-9;  // golden-section bracket width target
inline constexpr int minimize_grid_points = 1001;  // coarse scan resolution

// Norms and real inner products recoverable from the table, plus the
// constraint data for the unobservable pair: x + y = k_constraint with
// |x| <= c_x and |y| <= c_y (Cauchy-Schwarz boxes).
struct InnerProductEstimates {
  double g_norm = 0.0;              // <g|g>, g = e^i_i - e^i_j
  double h_norm = 0.0;              // <h|h>, h = f_i - f_j
  std::vector<double> f_norm;       // <f_b|f_b> = 2 p_phi[b]
  std::vector<double> re_eb_fb;     // Re<e^i_b|f_b> per label b
  double k_constraint = 0.0;
  double c_x = 0.0, c_y = 0.0;
};

namespace detail {

// clamps a reconstructed squared norm; below norm_floor the table cannot
// have come from a quantum state and the analysis must stop
inline double settle_norm(double v, const char* name) {
  if (v < norm_floor)
    throw inconsistent_stats_error(std::string(name) + " reconstructs to " + std::to_string(v) +
                                   ", below the physical floor");
  return v < 0.0 ? 0.0 : v;
}

}  // namespace detail

inline InnerProductEstimates estimate_inner_products(const ObservedStats& st) {
  const int i = st.cfg.i, j = st.cfg.j;
  const int d = st.cfg.dim;
  InnerProductEstimates est;
  est.g_norm = detail::settle_norm(2.0 * st.p_i[i] + 2.0 * st.p_i[j] - 2.0 * st.p_i_phi, "g_norm");
  est.h_norm = detail::settle_norm(4.0 * (st.p_phi[i] + st.p_phi[j] - st.p_phi_phi), "h_norm");
  est.f_norm.resize(static_cast<std::size_t>(d));
  est.re_eb_fb.resize(static_cast<std::size_t>(d));
  for (int b = 0; b < d; ++b) {
    const auto k = static_cast<std::size_t>(b);
    est.f_norm[k] = detail::settle_norm(2.0 * st.p_phi[k], "f_norm");
    est.re_eb_fb[k] = (st.p_i[k] + st.p_phi[k] - st.p_i[k] / 2.0 - st.p_j[k] / 2.0) /
                      std::numbers::sqrt2;
  }
  est.k_constraint = 2.0 * st.p_phi_phi - st.p_phi[i] - st.p_phi[j] - st.p_i_phi +
                     st.p_i[i] / 2.0 + st.p_i[j] / 2.0 - st.p_j_phi + st.p_j[i] / 2.0 +
                     st.p_j[j] / 2.0;
  est.c_x = std::sqrt(std::max(st.p_i[i] * st.p_j[j], 0.0));
  est.c_y = std::sqrt(std::max(st.p_i[j] * st.p_j[i], 0.0));
  return est;
}

// one invariant-subspace pair in the conditional-entropy bound
struct EntropyTerm {
  double n0 = 0.0, n1 = 0.0;  // weights conditioned on the two key bits
  double re_ip = 0.0;         // real inner product between the pair
  bool clamped = false;       // re_ip was pulled back to the Cauchy-Schwarz boundary
};

struct EntropyTermSet {
  std::vector<EntropyTerm> terms;
  double normalizer = 0.0;  // sum of n0 + n1 over the terms
  int clamp_count = 0;
};

namespace detail {

inline EntropyTerm make_term(double n0, double n1, double re, int& clamp_count) {
  EntropyTerm t{n0, n1, re, false};
  const double cap = std::sqrt(std::max(n0 * n1, 0.0));
  if (std::abs(re) > cap + ip_slack) {
    t.re_ip = re < 0.0 ? -cap : cap;
    t.clamped = true;
    ++clamp_count;
  }
  return t;
}

// conditional-entropy contribution of one pair before weight scaling:
// H2(n0/(n0+n1)) - H2(lambda). Empty branches contribute nothing.
inline double term_entropy(const EntropyTerm& t) {
  if (t.n0 <= weight_floor || t.n1 <= weight_floor) return 0.0;
  const double w = t.n0 + t.n1;
  double lam =
      0.5 + std::sqrt((t.n0 - t.n1) * (t.n0 - t.n1) + 4.0 * t.re_ip * t.re_ip) / (2.0 * w);
  lam = std::clamp(lam, 0.5, 1.0);
  return binary_entropy(t.n0 / w) - binary_entropy(lam);
}

inline bool same_term(const EntropyTerm& a, const EntropyTerm& b) {
  return a.n0 == b.n0 && a.n1 == b.n1 && a.re_ip == b.re_ip;
}

// shared re_ip offset of the i- and j-labelled terms; the unobservable
// (y for the i term, x for the j term) is added to it
inline double ij_re_base(const ObservedStats& st) {
  const int i = st.cfg.i, j = st.cfg.j;
  return st.p_i_phi - st.p_i[i] / 2.0 - st.p_i[j] - st.p_phi[j] + st.p_j[j] / 2.0;
}

}  // namespace detail

// weighted sum of term entropies; runs of identical adjacent terms are
// evaluated once and scaled by the run length
inline double entropy_bound(const std::vector<EntropyTerm>& terms, double normalizer) {
  if (!(normalizer > 0.0))
    throw degenerate_stats_error("entropy bound needs a positive normalizer");
  double total = 0.0;
  std::size_t k = 0;
  while (k < terms.size()) {
    std::size_t end = k + 1;
    while (end < terms.size() && detail::same_term(terms[end], terms[k])) ++end;
    const EntropyTerm& t = terms[k];
    total += static_cast<double>(end - k) * ((t.n0 + t.n1) / normalizer * detail::term_entropy(t));
    k = end;
  }
  return total;
}

// Terms in label order: one per basis label b outside {i, j}, then the
// i-labelled pair (carries y), then the j-labelled pair (carries x).
inline EntropyTermSet build_entropy_terms(const ObservedStats& st,
                                          const InnerProductEstimates& est, double x, double y) {
  if (std::abs(x) > est.c_x + ip_slack || std::abs(y) > est.c_y + ip_slack)
    throw std::invalid_argument("(x, y) outside the Cauchy-Schwarz box");
  x = std::clamp(x, -est.c_x, est.c_x);
  y = std::clamp(y, -est.c_y, est.c_y);
  const int i = st.cfg.i, j = st.cfg.j;
  EntropyTermSet out;
  out.terms.reserve(static_cast<std::size_t>(st.cfg.dim));
  for (int b = 0; b < st.cfg.dim; ++b) {
    if (b == i || b == j) continue;
    const auto k = static_cast<std::size_t>(b);
    out.terms.push_back(
        detail::make_term(st.p_i[k], st.p_phi[k], est.re_eb_fb[k], out.clamp_count));
  }
  const double base = detail::ij_re_base(st);
  out.terms.push_back(
      detail::make_term(0.5 * st.p_i[j], est.h_norm / 8.0, 0.25 * (base + y), out.clamp_count));
  out.terms.push_back(detail::make_term(0.25 * est.g_norm, 0.5 * st.p_phi[j], 0.25 * (base + x),
                                        out.clamp_count));
  double n = 0.0;
  for (const EntropyTerm& t : out.terms) n += t.n0 + t.n1;
  out.normalizer = n;
  return out;
}

struct MinimizeResult {
  double s_min = 0.0;
  double x_star = 0.0, y_star = 0.0;
  bool projected = false;  // constraint line missed the box; nearest corner used
};

// Global scan (minimize_grid_points samples) of the one-dimensional slice
// x in [max(-c_x, K - c_y), min(c_x, K + c_y)], y = K - x, followed by
// golden-section refinement of the best bracket. Ties keep the smallest x.
inline MinimizeResult minimize_entropy(const ObservedStats& st, const InnerProductEstimates& est) {
  const double k_sum = est.k_constraint;
  auto canonical = [&](double xx, double yy) {
    const EntropyTermSet ts = build_entropy_terms(st, est, xx, yy);
    return entropy_bound(ts.terms, ts.normalizer);
  };
  const double lo = std::max(-est.c_x, k_sum - est.c_y);
  const double hi = std::min(est.c_x, k_sum + est.c_y);
  if (lo > hi) {
    const double xx = k_sum > 0.0 ? est.c_x : -est.c_x;
    const double yy = k_sum > 0.0 ? est.c_y : -est.c_y;
    return MinimizeResult{canonical(xx, yy), xx, yy, true};
  }

  // the b-sector terms and all weights are independent of x; precompute
  // their grouped partial sum and vary only the two label terms
  const EntropyTermSet fixed = build_entropy_terms(st, est, lo, k_sum - lo);
  const double n_total = fixed.normalizer;
  if (!(n_total > 0.0))
    throw degenerate_stats_error("entropy bound needs a positive normalizer");
  const std::size_t nb = fixed.terms.size() - 2;
  double partial = 0.0;
  {
    std::size_t k = 0;
    while (k < nb) {
      std::size_t end = k + 1;
      while (end < nb && detail::same_term(fixed.terms[end], fixed.terms[k])) ++end;
      const EntropyTerm& t = fixed.terms[k];
      partial +=
          static_cast<double>(end - k) * ((t.n0 + t.n1) / n_total * detail::term_entropy(t));
      k = end;
    }
  }
  const EntropyTerm& ti = fixed.terms[nb];
  const EntropyTerm& tj = fixed.terms[nb + 1];
  const double base = detail::ij_re_base(st);
  int scratch = 0;
  auto objective = [&](double xx) {
    const EntropyTerm a = detail::make_term(ti.n0, ti.n1, 0.25 * (base + (k_sum - xx)), scratch);
    const EntropyTerm b = detail::make_term(tj.n0, tj.n1, 0.25 * (base + xx), scratch);
    return partial + (a.n0 + a.n1) / n_total * detail::term_entropy(a) +
           (b.n0 + b.n1) / n_total * detail::term_entropy(b);
  };

  double best_x = lo;
  double best_v = objective(lo);
  if (hi > lo) {
    const int n = minimize_grid_points - 1;
    int best_k = 0;
    for (int k = 1; k <= n; ++k) {
      const double xx = lo + (hi - lo) * (static_cast<double>(k) / n);
      const double v = objective(xx);
      if (v < best_v) {
        best_v = v;
        best_x = xx;
        best_k = k;
      }
    }
    double a = lo + (hi - lo) * (static_cast<double>(std::max(best_k - 1, 0)) / n);
    double b = lo + (hi - lo) * (static_cast<double>(std::min(best_k + 1, n)) / n);
    constexpr double inv_golden = 0.6180339887498949;
    while (b - a > minimize_step_tol) {
      const double c = b - (b - a) * inv_golden;
      const double d = a + (b - a) * inv_golden;
      if (objective(c) <= objective(d))
        b = d;
      else
        a = c;
    }
    const double refined = objective(a) <= objective(b) ? a : b;
    const double rv = objective(refined);
    if (rv < best_v || (rv == best_v && refined < best_x)) {
      best_v = rv;
      best_x = refined;
    }
  }
  const double y_star = k_sum - best_x;
  return MinimizeResult{canonical(best_x, y_star), best_x, y_star, false};
}

// key-bit x conclusive-outcome distribution (alice bit, bob bit)
struct JointDistribution {
  double p00 = 0.0, p01 = 0.0, p10 = 0.0, p11 = 0.0;
};

inline JointDistribution joint_distribution(const ObservedStats& st) {
  const InnerProductEstimates est = estimate_inner_products(st);
  const double n = build_entropy_terms(st, est, 0.0, 0.0).normalizer;
  if (!(n > 0.0)) throw degenerate_stats_error("conclusive probability mass is not positive");
  const int i = st.cfg.i, j = st.cfg.j;
  double row_i = 0.0, row_phi = 0.0;  // basis mass outside the two labels
  for (int b = 0; b < st.cfg.dim; ++b) {
    if (b == i || b == j) continue;
    row_i += st.p_i[static_cast<std::size_t>(b)];
    row_phi += st.p_phi[static_cast<std::size_t>(b)];
  }
  auto settle = [](double v) {
    if (v < norm_floor)
      throw inconsistent_stats_error("conclusive cell reconstructs below the physical floor");
    return v < 0.0 ? 0.0 : v;
  };
  const double two_n = 2.0 * n;
  JointDistribution jd;
  jd.p00 = settle(row_i + st.p_i[i] + st.p_i[j] - st.p_i_phi) / two_n;
  jd.p01 = settle(row_i + st.p_i[j]) / two_n;
  jd.p10 = settle(row_phi + st.p_phi[i] + st.p_phi[j] - st.p_phi_phi) / two_n;
  jd.p11 = settle(row_phi + st.p_phi[j]) / two_n;
  return jd;
}

// H(A|B) = H(joint) - H(bob marginal)
inline double conditional_shannon(const JointDistribution& jd) {
  const double joint = detail::plog(jd.p00) + detail::plog(jd.p01) + detail::plog(jd.p10) +
                       detail::plog(jd.p11);
  const double bob = detail::plog(jd.p00 + jd.p10) + detail::plog(jd.p01 + jd.p11);
  return joint - bob;
}

struct KeyRateResult {
  double s_ae_bound = 0.0;  // minimized lower bound on S(A|E)
  double h_ab = 0.0;        // reconciliation cost H(A|B)
  double rate = 0.0;        // s_ae_bound - h_ab
  double x_star = 0.0, y_star = 0.0;
  double normalizer = 0.0;
  JointDistribution joint;
  bool projected = false;
  int clamp_count = 0;
};

inline KeyRateResult key_rate(const ObservedStats& st) {
  const InnerProductEstimates est = estimate_inner_products(st);
  const MinimizeResult m = minimize_entropy(st, est);
  const EntropyTermSet ts = build_entropy_terms(st, est, m.x_star, m.y_star);
  KeyRateResult out;
  out.joint = joint_distribution(st);
  out.h_ab = conditional_shannon(out.joint);
  out.s_ae_bound = m.s_min;
  out.rate = out.s_ae_bound - out.h_ab;
  out.x_star = m.x_star;
  out.y_star = m.y_star;
  out.normalizer = ts.normalizer;
  out.projected = m.projected;
  out.clamp_count = ts.clamp_count;
  return out;
}

// reference high-dimensional BB84 rate under the same symmetric noise:
// log2 dim - 2 (H2(q) + q log2(dim - 1)); exactly log2 dim at q = 0
inline double bb84_rate(int dim, double q) {
  if (dim < 2) throw std::invalid_argument("bb84_rate needs dim >= 2");
  const double h = binary_entropy(q);  // also validates q
  const double spread = dim > 2 ? q * std::log2(static_cast<double>(dim - 1)) : 0.0;
  return std::log2(static_cast<double>(dim)) - 2.0 * (h + spread);
}

// Bisection for the noise level where rate_fn crosses zero. Requires
// rate_fn(lo) > 0 >= rate_fn(hi); returns the largest probe with
// nonnegative rate once the bracket is narrower than tol.
inline double noise_threshold(const std::function<double(double)>& rate_fn, double lo, double hi,
                              double tol = 1e-4) {
  if (!(tol > 0.0)) throw std::invalid_argument("threshold tolerance must be positive");
  if (!(lo < hi)) throw std::invalid_argument("threshold bracket must satisfy lo < hi");
  const double r_lo = rate_fn(lo);
  const double r_hi = rate_fn(hi);
  if (!(r_lo > 0.0) || r_hi > 0.0)
    throw no_sign_change_error("rate does not change sign on the bracket: rate(" +
                               std::to_string(lo) + ") = " + std::to_string(r_lo) + ", rate(" +
                               std::to_string(hi) + ") = " + std::to_string(r_hi));
  while (hi - lo > tol) {
    const double mid = lo + (hi - lo) / 2.0;
    if (rate_fn(mid) >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

enum class ChannelFamily { depolarizing, amplitude_damping };

struct SweepPoint {
  int dim = 0;
  double q = 0.0;
  std::optional<double> rate_extb92;
  std::optional<double> rate_bb84;
  std::string note;  // first error encountered at this point, if any
};

namespace detail {

// worker count: explicit request, else hardware, always capped by QKD_THREADS
inline unsigned resolve_threads(unsigned requested, std::size_t work_items) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QKD_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  if (work_items < n) n = static_cast<unsigned>(std::max<std::size_t>(work_items, 1));
  return n;
}

}  // namespace detail

// Rate table over dims x noise grid, dim-major then grid-minor, computed in
// parallel into preassigned slots so the result is order-deterministic.
// Failed points keep their note and leave the rate cells empty.
inline std::vector<SweepPoint> sweep(ChannelFamily family, const std::vector<int>& dims,
                                     const std::vector<double>& qs, bool with_bb84, int i = 0,
                                     int j = 1, unsigned threads = 0) {
  std::vector<SweepPoint> pts(dims.size() * qs.size());
  if (pts.empty()) return pts;
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      SweepPoint& p = pts[idx];
      p.dim = dims[idx / qs.size()];
      p.q = qs[idx % qs.size()];
      try {
        const ProtocolConfig cfg{p.dim, i, j};
        const ObservedStats st =
            family == ChannelFamily::depolarizing
                ? depolarizing_stats(cfg, p.q)
                : stats_from_channel(amplitude_damping_kraus(p.dim, p.q), cfg);
        p.rate_extb92 = key_rate(st).rate;
      } catch (const std::exception& e) {
        p.note = e.what();
      }
      if (with_bb84) {
        try {
          p.rate_bb84 = bb84_rate(p.dim, p.q);
        } catch (const std::exception&) {
          // cell stays empty; the grid may exceed this reference's domain
        }
      }
    }
  };
  const unsigned workers = detail::resolve_threads(threads, pts.size());
  if (workers <= 1) {
    run_range(0, pts.size());
    return pts;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (pts.size() + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = static_cast<std::size_t>(w) * chunk;
    const std::size_t end = std::min(pts.size(), begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(run_range, begin, end);
  }
  for (std::thread& t : pool) t.join();
  return pts;
}

}  // namespace extb92

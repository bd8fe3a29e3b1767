#pragma once
// Channel models and the observable statistics table the protocol estimates
// from: full-basis outcome rows for the three probe states |i>, |j>, |phi>
// and the three partial-measurement retention probabilities. Also owns the
// JSON stats / Kraus file formats used by the CLI.

#include "extb92/core.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace extb92 {

// Row p_x[b] is the probability of outcome b when x was sent and the full
// basis was measured; p_x_phi is the probability the partial measurement
// fires (retains) on input x. Rows must each sum to 1 within `tolerance`,
// which is 1e-9 for analytic tables and wider for empirical ones.
struct ObservedStats {
  ProtocolConfig cfg;
  std::vector<double> p_i, p_j, p_phi;
  double p_i_phi = 0.0, p_j_phi = 0.0, p_phi_phi = 0.0;
  double tolerance = prob_slack;

  static ObservedStats make(ProtocolConfig cfg, std::vector<double> p_i, std::vector<double> p_j,
                            std::vector<double> p_phi, double p_i_phi, double p_j_phi,
                            double p_phi_phi, double tolerance = prob_slack) {
    ObservedStats st{std::move(cfg), std::move(p_i), std::move(p_j),
                     std::move(p_phi), p_i_phi,      p_j_phi,
                     p_phi_phi,        tolerance};
    st.validate();
    return st;
  }

  // clamps entries within prob_slack of [0, 1] in place, then checks shape
  // and row sums; throws inconsistent_stats_error naming the offending field
  void validate() {
    cfg.validate();
    if (!(tolerance > 0.0)) throw inconsistent_stats_error("tolerance must be positive");
    auto check_row = [&](std::vector<double>& row, const char* name) {
      if (static_cast<int>(row.size()) != cfg.dim)
        throw inconsistent_stats_error(std::string(name) + " must have one entry per basis label");
      double sum = 0.0;
      for (std::size_t b = 0; b < row.size(); ++b) {
        if (row[b] < -prob_slack || row[b] > 1.0 + prob_slack)
          throw inconsistent_stats_error(std::string(name) + "[" + std::to_string(b) +
                                         "] outside [0, 1]: " + std::to_string(row[b]));
        row[b] = std::clamp(row[b], 0.0, 1.0);
        sum += row[b];
      }
      if (std::abs(sum - 1.0) > tolerance)
        throw inconsistent_stats_error(std::string(name) + " sums to " + std::to_string(sum) +
                                       ", expected 1 within " + std::to_string(tolerance));
    };
    check_row(p_i, "p_i");
    check_row(p_j, "p_j");
    check_row(p_phi, "p_phi");
    auto check_scalar = [&](double& v, const char* name) {
      if (v < -prob_slack || v > 1.0 + prob_slack)
        throw inconsistent_stats_error(std::string(name) + " outside [0, 1]: " + std::to_string(v));
      v = std::clamp(v, 0.0, 1.0);
    };
    check_scalar(p_i_phi, "p_i_phi");
    check_scalar(p_j_phi, "p_j_phi");
    check_scalar(p_phi_phi, "p_phi_phi");
  }
};

// symmetric depolarizing map E(rho) = (1 - D q/(D-1)) rho + (q/(D-1)) I,
// parametrized so q is the full-basis error probability: p_x[x] = 1 - q
inline ObservedStats depolarizing_stats(const ProtocolConfig& cfg, double q) {
  cfg.validate();
  const int d = cfg.dim;
  const double q_max = static_cast<double>(d - 1) / d;
  if (q < 0.0 || q > q_max)
    throw std::invalid_argument("depolarizing q must lie in [0, (dim-1)/dim]");
  const double off = q / (d - 1);
  const double alpha = 1.0 - static_cast<double>(d) * q / (d - 1);
  const double half = alpha / 2.0 + off;  // overlap-1/2 rows and scalars
  std::vector<double> p_i(d, off), p_j(d, off), p_phi(d, off);
  p_i[cfg.i] = 1.0 - q;
  p_j[cfg.j] = 1.0 - q;
  p_phi[cfg.i] = half;
  p_phi[cfg.j] = half;
  return ObservedStats::make(cfg, std::move(p_i), std::move(p_j), std::move(p_phi), half, half,
                             1.0 - q);
}

// Kraus form of the same map: full generalized-Pauli twirl with weight
// q' = D q/(D-1) spread uniformly over the dim^2 - 1 non-identity operators
inline KrausSet depolarizing_kraus(int dim, double q) {
  if (dim < 2) throw std::invalid_argument("depolarizing_kraus needs dim >= 2");
  const double q_max = static_cast<double>(dim - 1) / dim;
  if (q < 0.0 || q > q_max)
    throw std::invalid_argument("depolarizing q must lie in [0, (dim-1)/dim]");
  const double qp = static_cast<double>(dim) * q / (dim - 1);
  const double d2 = static_cast<double>(dim) * dim;
  const double w0 = std::sqrt(1.0 - qp * (d2 - 1.0) / d2);
  const double wm = std::sqrt(qp / d2);
  std::vector<cmatrix> ops = weyl_operators(dim);
  KrausSet out;
  out.ops.reserve(ops.size());
  out.ops.push_back(w0 * ops[0]);
  for (std::size_t m = 1; m < ops.size(); ++m) out.ops.push_back(wm * ops[m]);
  out.validate();
  return out;
}

// damping toward |0>: E_0 = diag(1, sqrt(1-p), ...), E_k = sqrt(p) |0><k|
inline KrausSet amplitude_damping_kraus(int dim, double p) {
  if (dim < 2) throw std::invalid_argument("amplitude_damping_kraus needs dim >= 2");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("damping probability must lie in [0, 1]");
  KrausSet out;
  cmatrix e0 = cmatrix::Zero(dim, dim);
  e0(0, 0) = 1.0;
  const double keep = std::sqrt(1.0 - p);
  for (int k = 1; k < dim; ++k) e0(k, k) = keep;
  out.ops.push_back(std::move(e0));
  const double drop = std::sqrt(p);
  for (int k = 1; k < dim; ++k) {
    cmatrix ek = cmatrix::Zero(dim, dim);
    ek(0, k) = drop;
    out.ops.push_back(std::move(ek));
  }
  out.validate();
  return out;
}

// Born-rule table for an arbitrary channel: send each probe state, read the
// basis diagonal and the partial-measurement retention probability
inline ObservedStats stats_from_channel(const KrausSet& kraus, const ProtocolConfig& cfg) {
  cfg.validate();
  kraus.validate();
  if (kraus.dim() != cfg.dim)
    throw std::invalid_argument("channel dimension does not match the protocol dimension");
  const cvector phi = superposition_phi(cfg);
  auto probe = [&](const cvector& v) { return apply_channel(kraus, v * v.adjoint()); };
  const cmatrix out_i = probe(ket(cfg.dim, cfg.i));
  const cmatrix out_j = probe(ket(cfg.dim, cfg.j));
  const cmatrix out_phi = probe(phi);
  auto row = [&](const cmatrix& rho) {
    std::vector<double> r(cfg.dim);
    for (int b = 0; b < cfg.dim; ++b) r[static_cast<std::size_t>(b)] = rho(b, b).real();
    return r;
  };
  auto retain = [&](const cmatrix& rho) { return (phi.adjoint() * rho * phi)(0, 0).real(); };
  return ObservedStats::make(cfg, row(out_i), row(out_j), row(out_phi), retain(out_i),
                             retain(out_j), retain(out_phi));
}

namespace detail {

inline nlohmann::json parse_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw stats_format_error(std::string("cannot open ") + what + " file: " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw stats_format_error(std::string(what) + " file is not valid JSON: " + e.what());
  }
}

inline double json_number(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) throw stats_format_error("key \"" + key + "\" must be a number");
  return v.get<double>();
}

inline int json_integer(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer()) throw stats_format_error("key \"" + key + "\" must be an integer");
  return v.get<int>();
}

inline std::vector<double> json_row(const nlohmann::json& v, const std::string& key) {
  if (!v.is_array()) throw stats_format_error("key \"" + key + "\" must be an array of numbers");
  std::vector<double> row;
  row.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) throw stats_format_error("key \"" + key + "\" must be an array of numbers");
    row.push_back(x.get<double>());
  }
  return row;
}

}  // namespace detail

// Stats file schema (exact keys, unknown keys rejected):
//   { "dimension": int, "i": int, "j": int,
//     "p_i": [...], "p_j": [...], "p_phi": [...],
//     "p_i_phi": real, "p_j_phi": real, "p_phi_phi": real,
//     "tolerance": real (optional, default 1e-9) }
inline ObservedStats load_stats(const std::string& path) {
  const nlohmann::json doc = detail::parse_json_file(path, "stats");
  if (!doc.is_object()) throw stats_format_error("stats file must hold a JSON object");
  static const std::vector<std::string> known = {"dimension", "i",       "j",
                                                 "p_i",       "p_j",     "p_phi",
                                                 "p_i_phi",   "p_j_phi", "p_phi_phi",
                                                 "tolerance"};
  for (const auto& item : doc.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end())
      throw stats_format_error("unknown key \"" + item.key() + "\" in stats file");
  }
  for (const auto& key : known) {
    if (key != "tolerance" && !doc.contains(key))
      throw stats_format_error("stats file is missing key \"" + key + "\"");
  }
  ProtocolConfig cfg{detail::json_integer(doc.at("dimension"), "dimension"),
                     detail::json_integer(doc.at("i"), "i"),
                     detail::json_integer(doc.at("j"), "j")};
  const double tol =
      doc.contains("tolerance") ? detail::json_number(doc.at("tolerance"), "tolerance") : prob_slack;
  return ObservedStats::make(cfg, detail::json_row(doc.at("p_i"), "p_i"),
                             detail::json_row(doc.at("p_j"), "p_j"),
                             detail::json_row(doc.at("p_phi"), "p_phi"),
                             detail::json_number(doc.at("p_i_phi"), "p_i_phi"),
                             detail::json_number(doc.at("p_j_phi"), "p_j_phi"),
                             detail::json_number(doc.at("p_phi_phi"), "p_phi_phi"), tol);
}

// writer for the same schema; doubles are serialized with shortest
// round-trip precision, so load_stats(save_stats(st)) reproduces st exactly
inline void save_stats(const ObservedStats& st, const std::string& path) {
  nlohmann::json doc;
  doc["dimension"] = st.cfg.dim;
  doc["i"] = st.cfg.i;
  doc["j"] = st.cfg.j;
  doc["p_i"] = st.p_i;
  doc["p_j"] = st.p_j;
  doc["p_phi"] = st.p_phi;
  doc["p_i_phi"] = st.p_i_phi;
  doc["p_j_phi"] = st.p_j_phi;
  doc["p_phi_phi"] = st.p_phi_phi;
  doc["tolerance"] = st.tolerance;
  std::ofstream out(path);
  if (!out) throw stats_format_error("cannot write stats file: " + path);
  out << doc.dump(2) << '\n';
}

// Kraus file schema: { "dimension": int, "operators": [...] } where each
// operator is either a dim x dim array of rows of [re, im] pairs or a flat
// row-major list of dim^2 pairs
inline KrausSet load_kraus(const std::string& path) {
  const nlohmann::json doc = detail::parse_json_file(path, "kraus");
  if (!doc.is_object()) throw stats_format_error("kraus file must hold a JSON object");
  for (const auto& item : doc.items()) {
    if (item.key() != "dimension" && item.key() != "operators")
      throw stats_format_error("unknown key \"" + item.key() + "\" in kraus file");
  }
  if (!doc.contains("dimension") || !doc.contains("operators"))
    throw stats_format_error("kraus file needs keys \"dimension\" and \"operators\"");
  const int d = detail::json_integer(doc.at("dimension"), "dimension");
  if (d < 1) throw stats_format_error("kraus dimension must be positive");
  const auto& ops = doc.at("operators");
  if (!ops.is_array() || ops.empty())
    throw stats_format_error("\"operators\" must be a non-empty array");
  auto entry = [](const nlohmann::json& e) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw stats_format_error("matrix entries must be [re, im] pairs");
    return cx(e[0].get<double>(), e[1].get<double>());
  };
  KrausSet out;
  for (const auto& op : ops) {
    if (!op.is_array()) throw stats_format_error("each operator must be an array");
    cmatrix m(d, d);
    const bool nested = !op.empty() && op[0].is_array() && !op[0].empty() && op[0][0].is_array();
    if (nested) {
      if (static_cast<int>(op.size()) != d)
        throw stats_format_error("operator must have one row per basis label");
      for (int r = 0; r < d; ++r) {
        const auto& row = op[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != d)
          throw stats_format_error("operator rows must have dim entries");
        for (int c = 0; c < d; ++c) m(r, c) = entry(row[static_cast<std::size_t>(c)]);
      }
    } else {
      if (static_cast<int>(op.size()) != d * d)
        throw stats_format_error("flat operator must list dim^2 entries, row major");
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = entry(op[static_cast<std::size_t>(r * d + c)]);
    }
    out.ops.push_back(std::move(m));
  }
  out.validate();
  return out;
}

}  // namespace extb92

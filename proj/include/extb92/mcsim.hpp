#pragma once
// Round-by-round protocol simulation against a fixed channel. Outcome
// distributions are precomputed once from the Born rule, then every round
// costs a handful of SplitMix64 draws, so the report is a pure function of
// (config, seed) on every platform.
//
// Per-round sampling order (fixed; reordering would silently change every
// seeded run): round type, send state, measurement choice, outcome.

#include "extb92/keyrate.hpp"
#include "extb92/rng.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace extb92 {

struct SimConfig {
  ProtocolConfig cfg;
  KrausSet kraus;
  std::uint64_t rounds = 0;
  double key_round_prob = 0.5;
  std::uint64_t seed = 0;

  void validate() const {
    cfg.validate();
    kraus.validate();
    if (kraus.dim() != cfg.dim)
      throw std::invalid_argument("channel dimension does not match the protocol dimension");
    if (rounds < 1) throw std::invalid_argument("simulation needs at least one round");
    if (!(key_round_prob > 0.0) || !(key_round_prob < 1.0))
      throw std::invalid_argument("key_round_prob must lie strictly between 0 and 1");
  }
};

namespace detail {

// send states are indexed 0 = |i>, 1 = |j>, 2 = superposition throughout
struct SampleTables {
  std::array<std::vector<double>, 3> z_cdf;  // cumulative full-basis rows
  std::array<double, 3> retain{};            // partial-measurement fire probability
};

inline SampleTables sample_tables(const ObservedStats& st) {
  SampleTables t;
  const std::vector<double>* rows[3] = {&st.p_i, &st.p_j, &st.p_phi};
  t.retain = {st.p_i_phi, st.p_j_phi, st.p_phi_phi};
  for (int s = 0; s < 3; ++s) {
    double acc = 0.0;
    t.z_cdf[static_cast<std::size_t>(s)].reserve(rows[s]->size());
    for (double p : *rows[s]) {
      acc += p;
      t.z_cdf[static_cast<std::size_t>(s)].push_back(acc);
    }
  }
  return t;
}

// inverse-CDF draw; u >= the final cumulant lands on the last label
inline int sample_cdf(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) return static_cast<int>(cdf.size()) - 1;
  return static_cast<int>(it - cdf.begin());
}

}  // namespace detail

struct RoundRecord {
  bool test_round = false;
  int state = 0;    // send-state index
  int basis = 0;    // 0 full basis, 1 partial measurement
  int outcome = 0;  // basis label, or 1 when the partial measurement fired
  int alice_bit = -1, bob_bit = -1;  // -1 when absent or inconclusive
  bool conclusive = false;
};

inline RoundRecord simulate_round(SplitMix64& rng, const detail::SampleTables& tables,
                                  const ProtocolConfig& cfg, double key_round_prob) {
  RoundRecord r;
  r.test_round = !(rng.next_double() < key_round_prob);
  if (r.test_round) {
    r.state = std::min(2, static_cast<int>(rng.next_double() * 3.0));
  } else {
    r.alice_bit = rng.next_double() < 0.5 ? 0 : 1;
    r.state = r.alice_bit == 0 ? 0 : 2;
  }
  r.basis = rng.next_double() < 0.5 ? 0 : 1;
  const auto s = static_cast<std::size_t>(r.state);
  if (r.basis == 0) {
    r.outcome = detail::sample_cdf(tables.z_cdf[s], rng.next_double());
  } else {
    r.outcome = rng.next_double() < tables.retain[s] ? 1 : 0;
  }
  if (!r.test_round) {
    if (r.basis == 0 && r.outcome != cfg.i) {
      r.conclusive = true;
      r.bob_bit = 1;
    } else if (r.basis == 1 && r.outcome == 0) {
      r.conclusive = true;
      r.bob_bit = 0;
    }
  }
  return r;
}

struct SimReport {
  ProtocolConfig cfg;
  std::uint64_t rounds = 0;
  double key_round_prob = 0.5;
  std::uint64_t seed = 0;

  std::uint64_t key_rounds = 0, test_rounds = 0;
  std::uint64_t conclusive_count = 0, inconclusive_count = 0;
  std::array<std::array<std::uint64_t, 2>, 2> key_counts{};  // [alice bit][bob bit]
  std::array<std::uint64_t, 3> z_trials{}, x_trials{}, x_fired{};
  std::array<std::vector<std::uint64_t>, 3> z_counts;  // per send state, per outcome

  std::uint64_t min_group_trials() const {
    std::uint64_t m = z_trials[0];
    for (int s = 0; s < 3; ++s) {
      m = std::min(m, z_trials[static_cast<std::size_t>(s)]);
      m = std::min(m, x_trials[static_cast<std::size_t>(s)]);
    }
    return m;
  }

  // frequency table; every (state, measurement) group must have trials.
  // Row-sum tolerance is the binomial-scale 5 / sqrt(min group trials).
  ObservedStats empirical_stats() const {
    static const char* names[3] = {"|i>", "|j>", "superposition"};
    for (int s = 0; s < 3; ++s) {
      if (z_trials[static_cast<std::size_t>(s)] == 0)
        throw insufficient_samples_error(std::string("no full-basis test trials for ") + names[s]);
      if (x_trials[static_cast<std::size_t>(s)] == 0)
        throw insufficient_samples_error(std::string("no partial-measurement test trials for ") +
                                         names[s]);
    }
    auto freq_row = [&](int s) {
      const auto& counts = z_counts[static_cast<std::size_t>(s)];
      const double trials = static_cast<double>(z_trials[static_cast<std::size_t>(s)]);
      std::vector<double> row(counts.size());
      for (std::size_t b = 0; b < counts.size(); ++b)
        row[b] = static_cast<double>(counts[b]) / trials;
      return row;
    };
    auto fire_rate = [&](int s) {
      return static_cast<double>(x_fired[static_cast<std::size_t>(s)]) /
             static_cast<double>(x_trials[static_cast<std::size_t>(s)]);
    };
    const double tol = 5.0 / std::sqrt(static_cast<double>(min_group_trials()));
    return ObservedStats::make(cfg, freq_row(0), freq_row(1), freq_row(2), fire_rate(0),
                               fire_rate(1), fire_rate(2), tol);
  }

  nlohmann::json to_json() const {
    nlohmann::json doc;
    doc["dimension"] = cfg.dim;
    doc["i"] = cfg.i;
    doc["j"] = cfg.j;
    doc["rounds"] = rounds;
    doc["key_round_prob"] = key_round_prob;
    doc["seed"] = seed;
    doc["key_rounds"] = key_rounds;
    doc["test_rounds"] = test_rounds;
    doc["conclusive"] = conclusive_count;
    doc["inconclusive"] = inconclusive_count;
    doc["key_counts"] = {{key_counts[0][0], key_counts[0][1]},
                         {key_counts[1][0], key_counts[1][1]}};
    doc["z_trials"] = z_trials;
    doc["z_counts"] = z_counts;
    doc["x_trials"] = x_trials;
    doc["x_fired"] = x_fired;
    return doc;
  }
};

inline SimReport run_simulation(const SimConfig& config) {
  config.validate();
  const ObservedStats st = stats_from_channel(config.kraus, config.cfg);
  const detail::SampleTables tables = detail::sample_tables(st);
  SimReport rep;
  rep.cfg = config.cfg;
  rep.rounds = config.rounds;
  rep.key_round_prob = config.key_round_prob;
  rep.seed = config.seed;
  for (auto& row : rep.z_counts) row.assign(static_cast<std::size_t>(config.cfg.dim), 0);
  SplitMix64 rng(config.seed);
  for (std::uint64_t n = 0; n < config.rounds; ++n) {
    const RoundRecord r = simulate_round(rng, tables, config.cfg, config.key_round_prob);
    const auto s = static_cast<std::size_t>(r.state);
    if (r.test_round) {
      ++rep.test_rounds;
      if (r.basis == 0) {
        ++rep.z_trials[s];
        ++rep.z_counts[s][static_cast<std::size_t>(r.outcome)];
      } else {
        ++rep.x_trials[s];
        rep.x_fired[s] += r.outcome == 1 ? 1 : 0;
      }
    } else {
      ++rep.key_rounds;
      if (r.conclusive) {
        ++rep.conclusive_count;
        ++rep.key_counts[static_cast<std::size_t>(r.alice_bit)]
                        [static_cast<std::size_t>(r.bob_bit)];
      } else {
        ++rep.inconclusive_count;
      }
    }
  }
  return rep;
}

// rate computed from the empirical table; throws insufficient_samples_error
// when any (state, measurement) group went unobserved
inline KeyRateResult empirical_key_rate(const SimReport& rep) {
  return key_rate(rep.empirical_stats());
}

}  // namespace extb92

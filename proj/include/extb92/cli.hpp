#pragma once
// Command-line surface. run() is the whole program: it parses argv-style
// arguments, executes one subcommand, writes to the supplied streams and
// returns the process exit code, so tests can drive it in-process and the
// binary in tools/ is a two-line shim.
//
// Exit codes: 0 success, 2 bad arguments, 3 inconsistent or degenerate
// statistics (including malformed input files), 4 no sign change in a
// threshold bracket, 5 soundness violation, 6 insufficient samples.
//
// Every code path prints through deterministic formatting (%.9g for reals),
// so identical invocations produce byte-identical output.

#include "extb92/mcsim.hpp"
#include "extb92/oracle.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace extb92::cli {

namespace detail {

inline std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string part = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("--dims entry \"" + part + "\" is not an integer");
    }
    if (used != part.size() || value < 2)
      throw std::invalid_argument("--dims entries must be integers >= 2, got \"" + part + "\"");
    dims.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (dims.empty()) throw std::invalid_argument("--dims must list at least one dimension");
  return dims;
}

// lo:hi:steps, inclusive on both ends, steps + 1 samples
inline std::vector<double> parse_grid(const std::string& text) {
  const std::size_t c1 = text.find(':');
  const std::size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("grid must look like lo:hi:steps");
  auto number = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("grid component \"" + part + "\" is not a number");
    }
    if (used != part.size())
      throw std::invalid_argument("grid component \"" + part + "\" is not a number");
    return v;
  };
  const double lo = number(text.substr(0, c1));
  const double hi = number(text.substr(c1 + 1, c2 - c1 - 1));
  const std::string steps_part = text.substr(c2 + 1);
  std::size_t used = 0;
  long steps = 0;
  try {
    steps = std::stol(steps_part, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("grid steps \"" + steps_part + "\" is not an integer");
  }
  if (used != steps_part.size() || steps < 1)
    throw std::invalid_argument("grid steps must be a positive integer");
  if (!(hi >= lo)) throw std::invalid_argument("grid needs hi >= lo");
  std::vector<double> qs;
  qs.reserve(static_cast<std::size_t>(steps) + 1);
  for (long k = 0; k <= steps; ++k)
    qs.push_back(lo + (hi - lo) * (static_cast<double>(k) / static_cast<double>(steps)));
  return qs;
}

struct ChannelArgs {
  std::string kind;
  int dim = 2;
  int i = 0;
  int j = 1;
  double q = 0.0;
  double p = 0.0;
  std::string path;
};

// registers the channel flag set on a subcommand
inline void add_channel_options(CLI::App* cmd, ChannelArgs& args,
                                const std::vector<std::string>& kinds) {
  cmd->add_option("--channel", args.kind, "channel model")->required()->check(CLI::IsMember(kinds));
  cmd->add_option("--dim", args.dim, "basis dimension");
  cmd->add_option("--i", args.i, "first protocol label (default 0)");
  cmd->add_option("--j", args.j, "second protocol label (default 1)");
  cmd->add_option("--q", args.q, "depolarizing error rate");
  cmd->add_option("--p", args.p, "amplitude-damping probability");
  cmd->add_option("--path", args.path, "input file for stats-file / kraus-file channels");
}

struct ResolvedChannel {
  std::string label;
  ObservedStats stats;
  std::optional<KrausSet> kraus;
};

// with_kraus asks for the operator form too (simulation, verification);
// stats-file channels cannot provide one
inline ResolvedChannel resolve_channel(const ChannelArgs& args, bool with_kraus) {
  if (args.kind == "depolarizing") {
    const ProtocolConfig cfg{args.dim, args.i, args.j};
    ResolvedChannel rc{"depolarizing (dim " + std::to_string(args.dim) + ", q " + fmt9(args.q) + ")",
                       depolarizing_stats(cfg, args.q), std::nullopt};
    if (with_kraus) rc.kraus = depolarizing_kraus(args.dim, args.q);
    return rc;
  }
  if (args.kind == "amplitude-damping") {
    const ProtocolConfig cfg{args.dim, args.i, args.j};
    KrausSet kraus = amplitude_damping_kraus(args.dim, args.p);
    ObservedStats st = stats_from_channel(kraus, cfg);
    ResolvedChannel rc{"amplitude-damping (dim " + std::to_string(args.dim) + ", p " + fmt9(args.p) +
                           ")",
                       std::move(st), std::nullopt};
    if (with_kraus) rc.kraus = std::move(kraus);
    return rc;
  }
  if (args.kind == "stats-file") {
    if (args.path.empty()) throw std::invalid_argument("--channel stats-file needs --path");
    if (with_kraus)
      throw std::invalid_argument("this command needs an operator-form channel, not stats-file");
    return ResolvedChannel{"stats-file (" + args.path + ")", load_stats(args.path), std::nullopt};
  }
  if (args.kind == "kraus-file") {
    if (args.path.empty()) throw std::invalid_argument("--channel kraus-file needs --path");
    KrausSet kraus = load_kraus(args.path);
    const ProtocolConfig cfg{kraus.dim(), args.i, args.j};
    ObservedStats st = stats_from_channel(kraus, cfg);
    ResolvedChannel rc{"kraus-file (" + args.path + ")", std::move(st), std::nullopt};
    if (with_kraus) rc.kraus = std::move(kraus);
    return rc;
  }
  throw std::invalid_argument("unknown channel kind: " + args.kind);
}

inline void warn_flags(const KeyRateResult& r, std::ostream& err) {
  if (r.projected)
    err << "warning: constraint line missed the box; rate uses the nearest corner\n";
  if (r.clamp_count > 0)
    err << "warning: " << r.clamp_count
        << " inner product(s) clamped to the Cauchy-Schwarz boundary\n";
}

inline void print_rate_text(const std::string& label, const ObservedStats& st,
                            const KeyRateResult& r, std::ostream& out) {
  out << "channel       : " << label << '\n';
  out << "labels        : i " << st.cfg.i << ", j " << st.cfg.j << '\n';
  out << "rate          : " << fmt9(r.rate) << '\n';
  out << "S(A|E) bound  : " << fmt9(r.s_ae_bound) << '\n';
  out << "H(A|B)        : " << fmt9(r.h_ab) << '\n';
  out << "x*, y*        : " << fmt9(r.x_star) << ", " << fmt9(r.y_star) << '\n';
  out << "normalizer    : " << fmt9(r.normalizer) << '\n';
  out << "joint         : " << fmt9(r.joint.p00) << ", " << fmt9(r.joint.p01) << ", "
      << fmt9(r.joint.p10) << ", " << fmt9(r.joint.p11) << '\n';
  out << "status        : " << (r.rate <= 0.0 ? "abort (rate <= 0)" : "ok") << '\n';
}

inline nlohmann::json rate_json(const std::string& label, const ObservedStats& st,
                                const KeyRateResult& r) {
  nlohmann::json doc;
  doc["channel"] = label;
  doc["dimension"] = st.cfg.dim;
  doc["i"] = st.cfg.i;
  doc["j"] = st.cfg.j;
  doc["rate"] = r.rate;
  doc["s_ae_bound"] = r.s_ae_bound;
  doc["h_ab"] = r.h_ab;
  doc["x_star"] = r.x_star;
  doc["y_star"] = r.y_star;
  doc["normalizer"] = r.normalizer;
  doc["joint"] = {r.joint.p00, r.joint.p01, r.joint.p10, r.joint.p11};
  doc["abort"] = r.rate <= 0.0;
  doc["projected"] = r.projected;
  doc["clamp_count"] = r.clamp_count;
  return doc;
}

inline void write_csv(std::ostream& os, const std::vector<SweepPoint>& pts, bool bb84) {
  os << (bb84 ? "dim,q,rate_extb92,rate_bb84" : "dim,q,rate_extb92") << '\n';
  for (const SweepPoint& p : pts) {
    os << p.dim << ',' << fmt9(p.q) << ',';
    if (p.rate_extb92) os << fmt9(*p.rate_extb92);
    if (bb84) {
      os << ',';
      if (p.rate_bb84) os << fmt9(*p.rate_bb84);
    }
    os << '\n';
  }
}

inline int run_sweep_command(const ChannelArgs& chan, const std::string& dims_text,
                             const std::string& grid_text, bool bb84, const std::string& out_path,
                             unsigned threads, std::ostream& out, std::ostream& err) {
  if (chan.kind != "depolarizing" && chan.kind != "amplitude-damping")
    throw std::invalid_argument("sweeps support depolarizing and amplitude-damping channels");
  if (bb84 && chan.kind != "depolarizing")
    throw std::invalid_argument("the reference column is defined for the depolarizing family only");
  const ChannelFamily family = chan.kind == "depolarizing" ? ChannelFamily::depolarizing
                                                           : ChannelFamily::amplitude_damping;
  const std::vector<int> dims = parse_dims(dims_text);
  const std::vector<double> qs = parse_grid(grid_text);
  const std::vector<SweepPoint> pts = sweep(family, dims, qs, bb84, chan.i, chan.j, threads);
  for (const SweepPoint& p : pts)
    if (!p.note.empty())
      err << "note: dim " << p.dim << " q " << fmt9(p.q) << ": " << p.note << '\n';
  if (out_path.empty()) {
    write_csv(out, pts, bb84);
  } else {
    std::ofstream file(out_path);
    if (!file) throw std::invalid_argument("cannot write csv file: " + out_path);
    write_csv(file, pts, bb84);
    out << "wrote " << pts.size() << " rows to " << out_path << '\n';
  }
  return 0;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"asymptotic key rates and noise thresholds for the two-label "
               "partial-measurement protocol"};
  app.name("extb92");
  app.require_subcommand(1);

  detail::ChannelArgs rate_chan;
  std::string rate_format = "text";
  std::string rate_dump;
  CLI::App* rate_cmd = app.add_subcommand("rate", "key rate for one channel");
  detail::add_channel_options(rate_cmd, rate_chan,
                              {"depolarizing", "amplitude-damping", "stats-file", "kraus-file"});
  rate_cmd->add_option("--format", rate_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  rate_cmd->add_option("--dump-stats", rate_dump, "write the stats table used to this path");

  detail::ChannelArgs sweep_chan;
  std::string sweep_dims, sweep_grid, sweep_out;
  bool sweep_bb84 = false;
  unsigned sweep_threads = 0;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "rate table over dims x noise grid (CSV)");
  detail::add_channel_options(sweep_cmd, sweep_chan, {"depolarizing", "amplitude-damping"});
  sweep_cmd->add_option("--dims", sweep_dims, "comma-separated dimensions")->required();
  sweep_cmd->add_option("--q-grid", sweep_grid, "noise grid lo:hi:steps (steps+1 samples)")
      ->required();
  sweep_cmd->add_flag("--compare-bb84", sweep_bb84, "append the reference-rate column");
  sweep_cmd->add_option("--out", sweep_out, "write CSV here instead of stdout");
  sweep_cmd->add_option("--threads", sweep_threads, "worker threads (0 = auto, QKD_THREADS caps)");

  detail::ChannelArgs cmp_chan;
  std::string cmp_dims, cmp_grid, cmp_out;
  unsigned cmp_threads = 0;
  CLI::App* cmp_cmd =
      app.add_subcommand("compare", "sweep with the reference-rate column always on");
  detail::add_channel_options(cmp_cmd, cmp_chan, {"depolarizing"});
  cmp_cmd->add_option("--dims", cmp_dims, "comma-separated dimensions")->required();
  cmp_cmd->add_option("--q-grid", cmp_grid, "noise grid lo:hi:steps (steps+1 samples)")->required();
  cmp_cmd->add_option("--out", cmp_out, "write CSV here instead of stdout");
  cmp_cmd->add_option("--threads", cmp_threads, "worker threads (0 = auto, QKD_THREADS caps)");

  detail::ChannelArgs thr_chan;
  double thr_tol = 1e-4;
  double thr_lo = 0.0;
  double thr_hi = -1.0;  // negative means family default
  std::string thr_format = "text";
  CLI::App* thr_cmd = app.add_subcommand("threshold", "largest noise level with nonnegative rate");
  detail::add_channel_options(thr_cmd, thr_chan, {"depolarizing", "amplitude-damping"});
  thr_cmd->add_option("--tol", thr_tol, "bracket width target (default 1e-4)");
  thr_cmd->add_option("--q-lo", thr_lo, "bracket lower end (default 0)");
  thr_cmd->add_option("--q-hi", thr_hi, "bracket upper end (default: family maximum)");
  thr_cmd->add_option("--format", thr_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  detail::ChannelArgs ver_chan;
  unsigned ver_random = 0;
  std::uint64_t ver_seed = 0;
  std::string ver_format = "text";
  CLI::App* ver_cmd =
      app.add_subcommand("verify", "check the estimation bound against the exact dilation");
  detail::add_channel_options(ver_cmd, ver_chan,
                              {"depolarizing", "amplitude-damping", "kraus-file"});
  ver_cmd->get_option("--channel")->required(false);
  ver_cmd->add_option("--random", ver_random, "verify this many seeded random channels instead");
  ver_cmd->add_option("--seed", ver_seed, "master seed for --random");
  ver_cmd->add_option("--format", ver_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  detail::ChannelArgs sim_chan;
  std::uint64_t sim_rounds = 0, sim_seed = 0;
  double sim_key_prob = 0.5;
  std::string sim_format = "text";
  std::string sim_out;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "seeded round-by-round protocol simulation");
  detail::add_channel_options(sim_cmd, sim_chan,
                              {"depolarizing", "amplitude-damping", "kraus-file"});
  sim_cmd->add_option("--rounds", sim_rounds, "number of protocol rounds")->required();
  sim_cmd->add_option("--seed", sim_seed, "generator seed");
  sim_cmd->add_option("--key-prob", sim_key_prob, "probability a round is a key round");
  sim_cmd->add_option("--format", sim_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  sim_cmd->add_option("--out", sim_out, "also write the JSON report to this path");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("extb92");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*rate_cmd) {
      const detail::ResolvedChannel rc = detail::resolve_channel(rate_chan, false);
      const KeyRateResult r = key_rate(rc.stats);
      detail::warn_flags(r, err);
      if (!rate_dump.empty()) save_stats(rc.stats, rate_dump);
      if (rate_format == "json")
        out << detail::rate_json(rc.label, rc.stats, r).dump(2) << '\n';
      else
        detail::print_rate_text(rc.label, rc.stats, r, out);
      return 0;
    }

    if (*sweep_cmd)
      return detail::run_sweep_command(sweep_chan, sweep_dims, sweep_grid, sweep_bb84, sweep_out,
                                       sweep_threads, out, err);
    if (*cmp_cmd)
      return detail::run_sweep_command(cmp_chan, cmp_dims, cmp_grid, true, cmp_out, cmp_threads,
                                       out, err);

    if (*thr_cmd) {
      if (thr_chan.kind != "depolarizing" && thr_chan.kind != "amplitude-damping")
        throw std::invalid_argument("thresholds need a parametric channel family");
      const bool depol = thr_chan.kind == "depolarizing";
      const ProtocolConfig cfg{thr_chan.dim, thr_chan.i, thr_chan.j};
      cfg.validate();
      const double hi = thr_hi >= 0.0
                            ? thr_hi
                            : (depol ? static_cast<double>(cfg.dim - 1) / cfg.dim : 1.0);
      auto rate_at = [&](double q) {
        const ObservedStats st = depol
                                     ? depolarizing_stats(cfg, q)
                                     : stats_from_channel(amplitude_damping_kraus(cfg.dim, q), cfg);
        return key_rate(st).rate;
      };
      const double q_star = noise_threshold(rate_at, thr_lo, hi, thr_tol);
      const std::string label = thr_chan.kind + " (dim " + std::to_string(cfg.dim) + ")";
      if (thr_format == "json") {
        nlohmann::json doc;
        doc["channel"] = label;
        doc["dimension"] = cfg.dim;
        doc["i"] = cfg.i;
        doc["j"] = cfg.j;
        doc["bracket"] = {thr_lo, hi};
        doc["tolerance"] = thr_tol;
        doc["threshold"] = q_star;
        out << doc.dump(2) << '\n';
      } else {
        out << "channel       : " << label << '\n';
        out << "labels        : i " << cfg.i << ", j " << cfg.j << '\n';
        out << "bracket       : [" << detail::fmt9(thr_lo) << ", " << detail::fmt9(hi) << "]\n";
        out << "tolerance     : " << detail::fmt9(thr_tol) << '\n';
        out << "threshold     : " << detail::fmt9(q_star) << '\n';
      }
      return 0;
    }

    if (*ver_cmd) {
      if (ver_random > 0) {
        // per-case seeds and operator counts come from one master stream,
        // so (--random, --seed, --dim) fixes the whole suite
        SplitMix64 master(ver_seed);
        unsigned passes = 0;
        nlohmann::json cases = nlohmann::json::array();
        for (unsigned t = 0; t < ver_random; ++t) {
          const std::uint64_t case_seed = master.next();
          const int ops = 2 + static_cast<int>(master.next() & 1);
          const KrausSet kraus = random_kraus(ver_chan.dim, ops, case_seed);
          const ProtocolConfig cfg{ver_chan.dim, ver_chan.i, ver_chan.j};
          const BoundReport rep = verify_bound(kraus, cfg);
          passes += rep.pass ? 1 : 0;
          if (ver_format == "json") {
            nlohmann::json c;
            c["case"] = t;
            c["ops"] = ops;
            c["exact"] = rep.exact;
            c["bound_at_true"] = rep.bound_at_true;
            c["bound_minimized"] = rep.bound_minimized;
            c["pass"] = rep.pass;
            cases.push_back(c);
          } else {
            out << "case " << t << ": ops " << ops << ", "
                << (rep.pass ? "pass" : "FAIL") << " (exact " << detail::fmt9(rep.exact)
                << ", bound " << detail::fmt9(rep.bound_minimized) << ")\n";
          }
        }
        const bool all = passes == ver_random;
        if (ver_format == "json") {
          nlohmann::json doc;
          doc["dimension"] = ver_chan.dim;
          doc["seed"] = ver_seed;
          doc["total"] = ver_random;
          doc["passes"] = passes;
          doc["pass"] = all;
          doc["cases"] = cases;
          out << doc.dump(2) << '\n';
        } else {
          out << "pass " << passes << "/" << ver_random << '\n';
        }
        return all ? 0 : 5;
      }
      if (ver_chan.kind.empty())
        throw std::invalid_argument("verify needs either --channel or --random");
      const detail::ResolvedChannel rc = detail::resolve_channel(ver_chan, true);
      const ProtocolConfig cfg = rc.stats.cfg;
      const BoundReport rep = verify_bound(*rc.kraus, cfg);
      if (ver_format == "json") {
        nlohmann::json doc;
        doc["channel"] = rc.label;
        doc["dimension"] = cfg.dim;
        doc["i"] = cfg.i;
        doc["j"] = cfg.j;
        doc["exact"] = rep.exact;
        doc["bound_at_true"] = rep.bound_at_true;
        doc["bound_minimized"] = rep.bound_minimized;
        doc["x_true"] = rep.x_true;
        doc["y_true"] = rep.y_true;
        doc["k_from_stats"] = rep.k_from_stats;
        doc["normalizer_exact"] = rep.normalizer_exact;
        doc["normalizer_stats"] = rep.normalizer_stats;
        doc["pass"] = rep.pass;
        out << doc.dump(2) << '\n';
      } else {
        out << "channel          : " << rc.label << '\n';
        out << "exact S(A|E)     : " << detail::fmt9(rep.exact) << '\n';
        out << "bound at true    : " << detail::fmt9(rep.bound_at_true) << '\n';
        out << "bound minimized  : " << detail::fmt9(rep.bound_minimized) << '\n';
        out << "true x, y        : " << detail::fmt9(rep.x_true) << ", "
            << detail::fmt9(rep.y_true) << '\n';
        out << "k from stats     : " << detail::fmt9(rep.k_from_stats) << '\n';
        out << "normalizers      : exact " << detail::fmt9(rep.normalizer_exact) << ", stats "
            << detail::fmt9(rep.normalizer_stats) << '\n';
        out << "verdict          : " << (rep.pass ? "pass" : "fail") << '\n';
      }
      return rep.pass ? 0 : 5;
    }

    if (*sim_cmd) {
      const detail::ResolvedChannel rc = detail::resolve_channel(sim_chan, true);
      SimConfig config{rc.stats.cfg, *rc.kraus, sim_rounds, sim_key_prob, sim_seed};
      const SimReport rep = run_simulation(config);
      const double analytic = key_rate(rc.stats).rate;
      std::optional<double> empirical;
      std::string sample_error;
      try {
        empirical = empirical_key_rate(rep).rate;
      } catch (const insufficient_samples_error& e) {
        sample_error = e.what();
      }
      nlohmann::json doc = rep.to_json();
      doc["analytic_rate"] = analytic;
      if (empirical)
        doc["empirical_rate"] = *empirical;
      else
        doc["empirical_rate"] = nullptr;
      if (!sim_out.empty()) {
        std::ofstream file(sim_out);
        if (!file) throw std::invalid_argument("cannot write report file: " + sim_out);
        file << doc.dump(2) << '\n';
      }
      if (sim_format == "json") {
        out << doc.dump(2) << '\n';
      } else {
        out << "channel        : " << rc.label << '\n';
        out << "rounds         : " << rep.rounds << " (key " << rep.key_rounds << ", test "
            << rep.test_rounds << ")\n";
        out << "conclusive     : " << rep.conclusive_count << " of " << rep.key_rounds
            << " key rounds\n";
        out << "key counts     : " << rep.key_counts[0][0] << ", " << rep.key_counts[0][1] << ", "
            << rep.key_counts[1][0] << ", " << rep.key_counts[1][1] << '\n';
        out << "analytic rate  : " << detail::fmt9(analytic) << '\n';
        if (empirical) {
          out << "empirical rate : " << detail::fmt9(*empirical) << '\n';
          out << "delta          : " << detail::fmt9(*empirical - analytic) << '\n';
        }
      }
      if (!empirical) {
        err << "error: " << sample_error << '\n';
        return 6;
      }
      return 0;
    }
  } catch (const no_sign_change_error& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  } catch (const insufficient_samples_error& e) {
    err << "error: " << e.what() << '\n';
    return 6;
  } catch (const stats_error& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const invalid_channel_error& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const invalid_state_error& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace extb92::cli

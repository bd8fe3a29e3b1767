#include "extb92/extb92.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace extb92;
using Catch::Approx;

namespace {

SimConfig make_sim(int dim, KrausSet kraus, std::uint64_t rounds, std::uint64_t seed,
                   double key_round_prob = 0.5) {
    SimConfig c;
    c.cfg = ProtocolConfig{dim, 0, 1};
    c.kraus = std::move(kraus);
    c.rounds = rounds;
    c.seed = seed;
    c.key_round_prob = key_round_prob;
    return c;
}

KrausSet identity_channel(int dim) {
    KrausSet k;
    k.ops = {cmatrix::Identity(dim, dim)};
    return k;
}

// binomial three-sigma band around probability p over n trials
double band3(double p, double n) { return 3.0 * std::sqrt(p * (1.0 - p) / n); }

} // namespace

TEST_CASE("simulation bookkeeping is exact") {
    const auto rep = run_simulation(make_sim(3, depolarizing_kraus(3, 0.1), 50000, 11));
    CHECK(rep.key_rounds + rep.test_rounds == rep.rounds);
    CHECK(rep.conclusive_count + rep.inconclusive_count == rep.key_rounds);
    std::uint64_t key_total = 0;
    for (const auto& row : rep.key_counts)
        for (std::uint64_t c : row) key_total += c;
    CHECK(key_total == rep.conclusive_count);
    std::uint64_t trials = 0;
    for (int s = 0; s < 3; ++s) {
        const auto k = static_cast<std::size_t>(s);
        std::uint64_t row = 0;
        for (std::uint64_t c : rep.z_counts[k]) row += c;
        CHECK(row == rep.z_trials[k]);
        CHECK(rep.x_fired[k] <= rep.x_trials[k]);
        trials += rep.z_trials[k] + rep.x_trials[k];
    }
    CHECK(trials == rep.test_rounds);
    std::uint64_t m = rep.z_trials[0];
    for (int s = 0; s < 3; ++s) {
        m = std::min(m, rep.z_trials[static_cast<std::size_t>(s)]);
        m = std::min(m, rep.x_trials[static_cast<std::size_t>(s)]);
    }
    CHECK(rep.min_group_trials() == m);
    const auto st = rep.empirical_stats();
    CHECK(st.tolerance == 5.0 / std::sqrt(static_cast<double>(m)));
}

TEST_CASE("simulation is deterministic in the seed") {
    const auto cfg = make_sim(2, depolarizing_kraus(2, 0.05), 20000, 42);
    const auto a = run_simulation(cfg);
    const auto b = run_simulation(cfg);
    CHECK(a.to_json().dump() == b.to_json().dump());
    auto other = cfg;
    other.seed = 43;
    CHECK(run_simulation(other).to_json().dump() != a.to_json().dump());
}

TEST_CASE("identity channel simulation") {
    const auto rep = run_simulation(make_sim(2, identity_channel(2), 1000000, 1));
    SECTION("degenerate frequencies are exact, not merely close") {
        CHECK(rep.z_counts[0][0] == rep.z_trials[0]); // |i> never leaves |i>
        CHECK(rep.x_fired[2] == rep.x_trials[2]);     // superposition always fires
        const auto st = rep.empirical_stats();
        CHECK(st.p_i[0] == 1.0);
        CHECK(st.p_phi_phi == 1.0);
        CHECK(estimate_inner_products(st).h_norm == 0.0);
    }
    SECTION("no cross errors ever occur") {
        CHECK(rep.key_counts[0][1] == 0); // bit 0 cannot produce a full-basis flag
        CHECK(rep.key_counts[1][0] == 0); // the superposition always fires
        CHECK(rep.key_counts[0][0] > 0);
        CHECK(rep.key_counts[1][1] > 0);
    }
    SECTION("conclusive fractions sit at the analytic values") {
        const double per_key = static_cast<double>(rep.conclusive_count) /
                               static_cast<double>(rep.key_rounds);
        CHECK(std::abs(per_key - 0.25) <=
              band3(0.25, static_cast<double>(rep.key_rounds)));
        const double overall = static_cast<double>(rep.conclusive_count) /
                               static_cast<double>(rep.rounds);
        CHECK(std::abs(overall - 0.125) <= band3(0.125, static_cast<double>(rep.rounds)));
    }
    SECTION("empirical rate lands near one bit") {
        const auto r = empirical_key_rate(rep);
        CHECK(r.rate == Approx(1.0).margin(0.05));
        CHECK(r.h_ab == 0.0); // both error cells are exactly empty
    }
}

TEST_CASE("simulated frequencies concentrate on the channel law") {
    const int dim = 3;
    const double q = 0.1;
    const auto rep = run_simulation(make_sim(dim, depolarizing_kraus(dim, q), 300000, 2));
    const auto truth = depolarizing_stats({dim, 0, 1}, q);
    const auto st = rep.empirical_stats();
    auto within = [](double got, double want, double trials) {
        // four-sigma binomial band plus one count of resolution
        return std::abs(got - want) <=
               4.0 * std::sqrt(want * (1.0 - want) / trials) + 1.0 / trials;
    };
    const double zi = static_cast<double>(rep.z_trials[0]);
    const double zj = static_cast<double>(rep.z_trials[1]);
    const double zp = static_cast<double>(rep.z_trials[2]);
    for (std::size_t b = 0; b < 3; ++b) {
        INFO("outcome " << b);
        CHECK(within(st.p_i[b], truth.p_i[b], zi));
        CHECK(within(st.p_j[b], truth.p_j[b], zj));
        CHECK(within(st.p_phi[b], truth.p_phi[b], zp));
    }
    CHECK(within(st.p_i_phi, truth.p_i_phi, static_cast<double>(rep.x_trials[0])));
    CHECK(within(st.p_j_phi, truth.p_j_phi, static_cast<double>(rep.x_trials[1])));
    CHECK(within(st.p_phi_phi, truth.p_phi_phi, static_cast<double>(rep.x_trials[2])));
}

TEST_CASE("empirical rate tracks the analytic rate") {
    const auto rep = run_simulation(make_sim(2, depolarizing_kraus(2, 0.02), 400000, 3));
    const double analytic = key_rate(depolarizing_stats({2, 0, 1}, 0.02)).rate;
    CHECK(empirical_key_rate(rep).rate == Approx(analytic).margin(0.05));
}

TEST_CASE("sparse test data is reported, not silently extrapolated") {
    // ~1% test rounds over 40 rounds leaves measurement groups empty
    const auto rep = run_simulation(make_sim(2, identity_channel(2), 40, 4, 0.99));
    REQUIRE(rep.min_group_trials() == 0);
    try {
        rep.empirical_stats();
        FAIL("expected insufficient_samples_error");
    } catch (const insufficient_samples_error& e) {
        CHECK(std::string(e.what()).find("trials") != std::string::npos);
    }
    CHECK_THROWS_AS(empirical_key_rate(rep), insufficient_samples_error);
}

TEST_CASE("simulation configuration validation") {
    auto cfg = make_sim(2, identity_channel(2), 100, 5);
    SECTION("valid config passes") { CHECK_NOTHROW(cfg.validate()); }
    SECTION("zero rounds") {
        cfg.rounds = 0;
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    }
    SECTION("key round probability must be interior") {
        cfg.key_round_prob = 0.0;
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
        cfg.key_round_prob = 1.0;
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    }
    SECTION("dimension mismatch") {
        cfg.kraus = identity_channel(3);
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    }
}

TEST_CASE("report serialization carries the full tally") {
    const auto rep = run_simulation(make_sim(2, depolarizing_kraus(2, 0.1), 5000, 6));
    const auto doc = rep.to_json();
    CHECK(doc["rounds"].get<std::uint64_t>() == 5000);
    CHECK(doc["seed"].get<std::uint64_t>() == 6);
    CHECK(doc["key_rounds"].get<std::uint64_t>() == rep.key_rounds);
    CHECK(doc["conclusive"].get<std::uint64_t>() == rep.conclusive_count);
    CHECK(doc["key_counts"][0][0].get<std::uint64_t>() == rep.key_counts[0][0]);
    CHECK(doc["z_counts"][2].size() == 2);
}

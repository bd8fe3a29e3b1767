#include "extb92/extb92.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

using Catch::Approx;

namespace {

struct CliResult {
    int code = 0;
    std::string out, err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = extb92::cli::run(args, out, err);
    return CliResult{code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() /
           ("extb92_cli_" + std::to_string(::getpid()) + "_" + name);
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

} // namespace

TEST_CASE("rate subcommand") {
    const std::vector<std::string> args = {"rate", "--channel", "depolarizing",
                                           "--dim", "2", "--q", "0.02"};
    SECTION("text output carries the frozen rate") {
        const auto r = run_cli(args);
        REQUIRE(r.code == 0);
        CHECK(r.out.find("rate          : 0.493371821") != std::string::npos);
        CHECK(r.out.find("status        : ok") != std::string::npos);
        CHECK(r.out.find("channel       : depolarizing (dim 2, q 0.02)") != std::string::npos);
    }
    SECTION("json output parses and matches the library value") {
        auto jargs = args;
        jargs.insert(jargs.end(), {"--format", "json"});
        const auto r = run_cli(jargs);
        REQUIRE(r.code == 0);
        const auto doc = nlohmann::json::parse(r.out);
        CHECK(doc["rate"].get<double>() == Approx(0.4933718209861284).margin(1e-12));
        CHECK(doc["abort"].get<bool>() == false);
        CHECK(doc["joint"].size() == 4);
    }
    SECTION("negative rates are flagged as abort") {
        const auto r = run_cli({"rate", "--channel", "depolarizing", "--dim", "2",
                                "--q", "0.1"});
        REQUIRE(r.code == 0);
        CHECK(r.out.find("status        : abort (rate <= 0)") != std::string::npos);
    }
    SECTION("amplitude damping uses --p") {
        const auto r = run_cli({"rate", "--channel", "amplitude-damping", "--dim", "4",
                                "--p", "0.08"});
        REQUIRE(r.code == 0);
        CHECK(r.out.find("rate          : 0.851212895") != std::string::npos);
    }
}

TEST_CASE("stats file round trip through the CLI") {
    const auto dump = temp_path("dump_stats.json");
    const auto direct = run_cli({"rate", "--channel", "depolarizing", "--dim", "3",
                                 "--q", "0.04", "--format", "json", "--dump-stats",
                                 dump.string()});
    REQUIRE(direct.code == 0);
    const auto reload = run_cli({"rate", "--channel", "stats-file", "--path",
                                 dump.string(), "--format", "json"});
    REQUIRE(reload.code == 0);
    const auto a = nlohmann::json::parse(direct.out);
    const auto b = nlohmann::json::parse(reload.out);
    // the table reloads bit for bit, so every derived number is identical
    CHECK(a["rate"].get<double>() == b["rate"].get<double>());
    CHECK(a["s_ae_bound"].get<double>() == b["s_ae_bound"].get<double>());
    CHECK(a["x_star"].get<double>() == b["x_star"].get<double>());
    CHECK(a["joint"] == b["joint"]);
    std::filesystem::remove(dump);
}

TEST_CASE("kraus file channel matches its parametric twin") {
    const auto path = temp_path("ampdamp.json");
    {
        const auto ops = extb92::amplitude_damping_kraus(4, 0.08);
        nlohmann::json doc;
        doc["dimension"] = 4;
        for (const auto& m : ops.ops) {
            nlohmann::json rows = nlohmann::json::array();
            for (int r = 0; r < 4; ++r) {
                nlohmann::json row = nlohmann::json::array();
                for (int c = 0; c < 4; ++c)
                    row.push_back({m(r, c).real(), m(r, c).imag()});
                rows.push_back(row);
            }
            doc["operators"].push_back(rows);
        }
        std::ofstream(path) << doc.dump();
    }
    const auto via_file = run_cli({"rate", "--channel", "kraus-file", "--path",
                                   path.string(), "--format", "json"});
    const auto via_param = run_cli({"rate", "--channel", "amplitude-damping", "--dim", "4",
                                    "--p", "0.08", "--format", "json"});
    REQUIRE(via_file.code == 0);
    REQUIRE(via_param.code == 0);
    const auto a = nlohmann::json::parse(via_file.out);
    const auto b = nlohmann::json::parse(via_param.out);
    CHECK(a["rate"].get<double>() == b["rate"].get<double>());
    std::filesystem::remove(path);
}

TEST_CASE("sweep subcommand") {
    SECTION("plain CSV header and zero-noise row") {
        const auto r = run_cli({"sweep", "--channel", "depolarizing", "--dims", "2,4",
                                "--q-grid", "0:0.1:2"});
        REQUIRE(r.code == 0);
        const auto lines = split_lines(r.out);
        REQUIRE(lines.size() == 7); // header + 2 dims x 3 samples
        CHECK(lines[0] == "dim,q,rate_extb92");
        CHECK(lines[1] == "2,0,1");
        CHECK(lines[4] == "4,0,1");
    }
    SECTION("reference column via flag") {
        const auto r = run_cli({"sweep", "--channel", "depolarizing", "--dims", "2",
                                "--q-grid", "0:0.02:1", "--compare-bb84"});
        REQUIRE(r.code == 0);
        const auto lines = split_lines(r.out);
        CHECK(lines[0] == "dim,q,rate_extb92,rate_bb84");
        CHECK(lines[1] == "2,0,1,1");
        CHECK(lines[2].rfind("2,0.02,0.493371821,", 0) == 0);
    }
    SECTION("compare subcommand always appends the reference column") {
        const auto r = run_cli({"compare", "--channel", "depolarizing", "--dims", "2",
                                "--q-grid", "0:0.02:1"});
        REQUIRE(r.code == 0);
        CHECK(split_lines(r.out)[0] == "dim,q,rate_extb92,rate_bb84");
    }
    SECTION("out-of-domain points keep the row with empty cells and a note") {
        const auto r = run_cli({"sweep", "--channel", "depolarizing", "--dims", "2",
                                "--q-grid", "0:0.6:1"});
        REQUIRE(r.code == 0);
        const auto lines = split_lines(r.out);
        REQUIRE(lines.size() == 3);
        CHECK(lines[2] == "2,0.6,");
        CHECK(r.err.find("note: dim 2 q 0.6") != std::string::npos);
    }
    SECTION("--out writes the CSV to a file") {
        const auto path = temp_path("sweep.csv");
        const auto r = run_cli({"sweep", "--channel", "depolarizing", "--dims", "2",
                                "--q-grid", "0:0.05:1", "--out", path.string()});
        REQUIRE(r.code == 0);
        CHECK(r.out.find("wrote 2 rows") != std::string::npos);
        std::ifstream in(path);
        std::string header;
        std::getline(in, header);
        CHECK(header == "dim,q,rate_extb92");
        std::filesystem::remove(path);
    }
    SECTION("reference column needs the depolarizing family") {
        const auto r = run_cli({"sweep", "--channel", "amplitude-damping", "--dims", "2",
                                "--q-grid", "0:0.1:1", "--compare-bb84"});
        CHECK(r.code == 2);
    }
    SECTION("malformed grids are usage errors") {
        CHECK(run_cli({"sweep", "--channel", "depolarizing", "--dims", "2",
                       "--q-grid", "0:0.1"}).code == 2);
        CHECK(run_cli({"sweep", "--channel", "depolarizing", "--dims", "2,x",
                       "--q-grid", "0:0.1:1"}).code == 2);
    }
}

TEST_CASE("threshold subcommand") {
    SECTION("depolarizing dim 2 lands in the known window") {
        const auto r = run_cli({"threshold", "--channel", "depolarizing", "--dim", "2"});
        REQUIRE(r.code == 0);
        CHECK(r.out.find("threshold     : 0.05") != std::string::npos);
    }
    SECTION("json output exposes the bracket") {
        const auto r = run_cli({"threshold", "--channel", "depolarizing", "--dim", "2",
                                "--format", "json"});
        REQUIRE(r.code == 0);
        const auto doc = nlohmann::json::parse(r.out);
        CHECK(doc["threshold"].get<double>() == Approx(0.0536).margin(5e-4));
        CHECK(doc["bracket"][1].get<double>() == Approx(0.5).margin(1e-12));
    }
    SECTION("a bracket without a crossing exits 4") {
        const auto r = run_cli({"threshold", "--channel", "depolarizing", "--dim", "2",
                                "--q-lo", "0.2", "--q-hi", "0.3"});
        CHECK(r.code == 4);
        CHECK(r.err.find("error:") != std::string::npos);
    }
}

TEST_CASE("verify subcommand") {
    SECTION("single channel verdict") {
        const auto r = run_cli({"verify", "--channel", "amplitude-damping", "--dim", "4",
                                "--p", "0.08"});
        REQUIRE(r.code == 0);
        CHECK(r.out.find("verdict          : pass") != std::string::npos);
        CHECK(r.out.find("exact S(A|E)     : 0.978362993") != std::string::npos);
    }
    SECTION("seeded random suite") {
        const auto r = run_cli({"verify", "--random", "3", "--seed", "7", "--dim", "3"});
        REQUIRE(r.code == 0);
        CHECK(r.out.find("pass 3/3") != std::string::npos);
        CHECK(split_lines(r.out).size() == 4); // one line per case plus the tally
    }
    SECTION("verify needs a channel or a random count") {
        CHECK(run_cli({"verify", "--dim", "2"}).code == 2);
    }
}

TEST_CASE("simulate subcommand") {
    const std::vector<std::string> args = {"simulate", "--channel", "depolarizing",
                                           "--dim", "2", "--q", "0.05",
                                           "--rounds", "20000", "--seed", "9"};
    SECTION("text report") {
        const auto r = run_cli(args);
        REQUIRE(r.code == 0);
        CHECK(r.out.find("rounds         : 20000") != std::string::npos);
        CHECK(r.out.find("empirical rate : ") != std::string::npos);
        CHECK(r.out.find("analytic rate  : 0.0432342916") != std::string::npos);
    }
    SECTION("json report written to --out") {
        const auto path = temp_path("sim.json");
        auto full = args;
        full.insert(full.end(), {"--out", path.string()});
        const auto r = run_cli(full);
        REQUIRE(r.code == 0);
        std::ifstream in(path);
        const auto doc = nlohmann::json::parse(in);
        CHECK(doc["rounds"].get<std::uint64_t>() == 20000);
        CHECK(doc["analytic_rate"].get<double>() == Approx(0.04323429163368514).margin(1e-12));
        CHECK(doc["empirical_rate"].is_number());
        std::filesystem::remove(path);
    }
    SECTION("too little test data exits 6") {
        const auto r = run_cli({"simulate", "--channel", "depolarizing", "--dim", "2",
                                "--q", "0.05", "--rounds", "30", "--seed", "4",
                                "--key-prob", "0.99"});
        CHECK(r.code == 6);
        CHECK(r.err.find("error:") != std::string::npos);
    }
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"nonsense"}).code == 2);
    CHECK(run_cli({"rate"}).code == 2);                              // --channel required
    CHECK(run_cli({"rate", "--channel", "teleport"}).code == 2);     // unknown family
    CHECK(run_cli({"rate", "--channel", "depolarizing", "--dim", "2",
                   "--q", "0.02", "--format", "yaml"}).code == 2);
    CHECK(run_cli({"threshold", "--channel", "depolarizing", "--dim", "1"}).code == 2);
}

TEST_CASE("file errors exit 3") {
    const auto r = run_cli({"rate", "--channel", "stats-file", "--path",
                            "/nonexistent/stats.json"});
    CHECK(r.code == 3);
    CHECK(r.err.find("error:") != std::string::npos);
    const auto bad = temp_path("bad_stats.json");
    std::ofstream(bad) << "{broken";
    CHECK(run_cli({"rate", "--channel", "stats-file", "--path", bad.string()}).code == 3);
    std::filesystem::remove(bad);
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(run_cli({"rate", "--help"}).code == 0);
}

TEST_CASE("every subcommand is byte deterministic") {
    const std::vector<std::vector<std::string>> cases = {
        {"rate", "--channel", "depolarizing", "--dim", "3", "--q", "0.03",
         "--format", "json"},
        {"sweep", "--channel", "depolarizing", "--dims", "2,4", "--q-grid", "0:0.12:4",
         "--compare-bb84"},
        {"compare", "--channel", "depolarizing", "--dims", "2,3", "--q-grid", "0:0.1:2"},
        {"threshold", "--channel", "depolarizing", "--dim", "4", "--format", "json"},
        {"verify", "--random", "2", "--seed", "11", "--dim", "2", "--format", "json"},
        {"simulate", "--channel", "amplitude-damping", "--dim", "3", "--p", "0.1",
         "--rounds", "5000", "--seed", "13", "--format", "json"},
    };
    for (const auto& args : cases) {
        INFO("subcommand " << args[0]);
        const auto first = run_cli(args);
        const auto second = run_cli(args);
        CHECK(first.code == second.code);
        CHECK(first.out == second.out);
        CHECK(first.err == second.err);
        CHECK(first.code == 0);
    }
}

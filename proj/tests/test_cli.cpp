#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "twcut/circuit.hpp"
#include "twcut/graph.hpp"
#include "twcut/selection.hpp"

using json = nlohmann::json;
using namespace twcut;

namespace {

std::string bin() {
    const char* env = std::getenv("TWCUT_BIN");
    REQUIRE(env != nullptr);
    return env;
}

struct CmdResult {
    int exit_code;
    std::string out;
};

CmdResult run_cmd(const std::string& args) {
    std::string cmd = bin() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string tmp_path(const std::string& name) {
    return std::string("/tmp/twcut_test_") + name;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char ch : text) n += ch == '\n' ? 1 : 0;
    return n;
}

}  // namespace

TEST_CASE("select on the barbell circuit") {
    auto c = circuit_from_graph(generate(GraphFamilySpec::barbell(3, 0)));
    auto path = tmp_path("barbell.qc");
    write_circuit_file(c, path);

    auto r = run_cmd("select " + path);
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    auto lib = select_cut(c);
    CHECK(j["edge"][0] == lib.edge.first);
    CHECK(j["edge"][1] == lib.edge.second);
    CHECK(j["gate_index"] == lib.gate_index);
    CHECK(j["shortlist"].size() == 3);

    auto explained = run_cmd("select " + path + " --explain");
    auto je = json::parse(explained.out);
    CHECK(je.contains("trace"));
    CHECK(je["trace"].size() == 6);
}

TEST_CASE("select exit codes") {
    auto bad = tmp_path("bad.qc");
    write_file(bad, "qubits 1\ncx 0 1\n");
    CHECK(run_cmd("select " + bad).exit_code == 2);

    auto no2q = tmp_path("no2q.qc");
    write_file(no2q, "qubits 2\nh 0\n");
    CHECK(run_cmd("select " + no2q).exit_code == 3);
}

TEST_CASE("random selection is seed-stable") {
    auto c = circuit_from_graph(generate(GraphFamilySpec::barbell(3, 0)));
    auto path = tmp_path("barbell2.qc");
    write_circuit_file(c, path);
    auto a = run_cmd("select " + path + " --method random --seed 42");
    auto b = run_cmd("select " + path + " --method random --seed 42");
    CHECK(a.out == b.out);
    CHECK(json::parse(a.out)["method"] == "random");
}

TEST_CASE("generate and interaction round trip") {
    auto gpath = tmp_path("grid.graph");
    auto r = run_cmd("generate grid --param rows=3 --param cols=3 --out " + gpath);
    REQUIRE(r.exit_code == 0);
    auto g = read_graph_file(gpath);
    CHECK(g.num_nodes() == 9);
    CHECK(g.num_edges() == 12);

    auto cpath = tmp_path("grid.qc");
    REQUIRE(run_cmd("circuit --from-graph " + gpath + " --out " + cpath).exit_code == 0);
    auto inter = run_cmd("interaction " + cpath);
    CHECK(inter.exit_code == 0);
    CHECK(inter.out.substr(0, 4) == "9 12");
}

TEST_CASE("tfim circuit generation") {
    auto cpath = tmp_path("tfim.qc");
    auto r = run_cmd("circuit --tfim n=4,T=1 --out " + cpath);
    REQUIRE(r.exit_code == 0);
    auto c = read_circuit_file(cpath);
    CHECK(c.gates.size() == 11);
}

TEST_CASE("route command") {
    auto c = circuit_from_graph(generate(GraphFamilySpec::barbell(3, 0)));
    auto path = tmp_path("route.qc");
    write_circuit_file(c, path);
    auto routed_path = tmp_path("routed.qc");
    auto r = run_cmd("route " + path + " --seeds 42,123,7 --dump-routed " + routed_path);
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j["per_seed"].size() == 3);
    CHECK(j["ecr_mean"].get<double>() >= 7.0);
    auto routed = read_circuit_file(routed_path);
    CHECK(routed.n_qubits == 127);
}

TEST_CASE("estimate command") {
    auto cpath = tmp_path("est.qc");
    write_file(cpath, "qubits 2\nh 0\ncx 0 1\n");
    auto opath = tmp_path("est.obs");
    write_file(opath, "1.0 ZZ\n");

    auto exact = run_cmd("estimate " + cpath + " --observable " + opath + " --exact");
    REQUIRE(exact.exit_code == 0);
    CHECK(json::parse(exact.out)["value"].get<double>() == doctest::Approx(1.0));

    auto qpd = run_cmd("estimate " + cpath + " --observable " + opath +
                       " --cut auto --exact");
    REQUIRE(qpd.exit_code == 0);
    auto j = json::parse(qpd.out);
    CHECK(j["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(j["per_branch"].size() == 6);

    auto sampled = run_cmd("estimate " + cpath + " --observable " + opath +
                           " --cut 1 --budget 600 --strategy per_subcircuit_1_5x --seed 5");
    REQUIRE(sampled.exit_code == 0);
    auto js = json::parse(sampled.out);
    CHECK(js["shots"][0].get<long>() == 900);
}

TEST_CASE("bench command emits records and summaries") {
    auto cfg = tmp_path("bench.cfg");
    write_file(cfg,
               "[bench]\n"
               "route_seeds = 42\n"
               "random_trials = 2\n"
               "[sweep]\n"
               "family = barbell\n"
               "k = 3\n"
               "m = 0 1\n"
               "[sweep]\n"
               "family = sbm\n"
               "n_per = 4\n"
               "m = 2\n"
               "p_in = 0.5\n"
               "mu = 0.4\n"
               "seeds = 2\n");
    auto csv = tmp_path("bench.csv");
    auto r = run_cmd("bench --config " + cfg + " --out " + csv);
    REQUIRE(r.exit_code == 0);
    auto rows = read_file(csv);
    CHECK(count_lines(rows) == 1 + 2 + 2);  // header + 2 barbell + 2 sbm
    CHECK(rows.find("barbell_k3") != std::string::npos);
    CHECK(r.out.find("condition,n,mean_adv,win_rate,p") != std::string::npos);

    // Empty sweep: header-only CSV.
    auto empty_cfg = tmp_path("empty.cfg");
    write_file(empty_cfg, "[bench]\nroute_seeds = 42\n");
    auto empty_csv = tmp_path("empty.csv");
    REQUIRE(run_cmd("bench --config " + empty_cfg + " --out " + empty_csv).exit_code == 0);
    CHECK(count_lines(read_file(empty_csv)) == 1);
}

TEST_CASE("sbm mu sweep config emits one row per instance") {
    auto cfg = tmp_path("mu.cfg");
    write_file(cfg,
               "[bench]\n"
               "route_seeds = 42\n"
               "random_trials = 2\n"
               "[sweep]\n"
               "family = sbm\n"
               "n_per = 8\n"
               "m = 2\n"
               "p_in = 0.5\n"
               "mu = 0.02 0.05 0.10 0.15 0.20 0.30 0.40\n"
               "seeds = 20\n");
    auto csv = tmp_path("mu.csv");
    REQUIRE(run_cmd("bench --config " + cfg + " --out " + csv + " --quiet").exit_code == 0);
    CHECK(count_lines(read_file(csv)) == 1 + 140);
}

TEST_CASE("breakeven command") {
    auto cfg = tmp_path("be.cfg");
    write_file(cfg,
               "[breakeven]\n"
               "p = 0.005\n"
               "n = 200\n"
               "sigma_h = 7\n"
               "delta_n = 5 10 15\n"
               "h_ideal = 0 5\n");
    auto csv = tmp_path("be.csv");
    REQUIRE(run_cmd("breakeven --config " + cfg + " --out " + csv).exit_code == 0);
    auto rows = read_file(csv);
    CHECK(count_lines(rows) == 1 + 6);
    CHECK(rows.find("inf") != std::string::npos);

    // m_star decreases along increasing delta_n for the h=5 rows.
    std::istringstream is(rows);
    std::string line;
    std::getline(is, line);  // header
    double prev = -1.0;
    while (std::getline(is, line)) {
        auto last_comma = line.rfind(',');
        std::string ms = line.substr(last_comma + 1);
        if (ms == "inf") continue;
        double v = std::stod(ms);
        CHECK(v < 1000.0 + 1e9 * (line.find(",15,") == std::string::npos ? 1 : 0));
        if (prev > 0) CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("failure sweep smoke cell") {
    auto cfg = tmp_path("fail.cfg");
    write_file(cfg,
               "[failure]\n"
               "n = 4\n"
               "T = 2\n"
               "budgets = 1000\n"
               "strategies = shared\n"
               "reps = 1\n");
    auto csv = tmp_path("fail.csv");
    REQUIRE(run_cmd("failure-sweep --config " + cfg + " --out " + csv).exit_code == 0);
    auto rows = read_file(csv);
    CHECK(count_lines(rows) == 2);
    CHECK(rows.find("4,2,1000,shared") != std::string::npos);
}

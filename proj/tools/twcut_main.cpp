// twcut: treewidth-guided gate-cut selection and benchmarking toolkit.
//
// Machine output (JSON/CSV) goes to stdout or the requested files; human
// diagnostics go to stderr.  Exit codes: 0 ok, 1 runtime failure, 2 parse
// error, 3 circuit has no two-qubit gates.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "twcut/breakeven.hpp"
#include "twcut/config.hpp"
#include "twcut/elimination.hpp"
#include "twcut/estimate.hpp"
#include "twcut/pipelines.hpp"

using json = nlohmann::json;
using namespace twcut;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitNoTwoQubit = 3;

CouplingMap coupling_from_flag(const std::string& choice) {
    if (choice == "heavyhex127") return heavy_hex(7);
    if (choice.rfind("file:", 0) == 0) return CouplingMap(read_graph_file(choice.substr(5)));
    throw std::runtime_error("unknown coupling '" + choice + "' (use heavyhex127 or file:PATH)");
}

json selection_json(const CutSelection& sel) {
    json shortlist = json::array();
    for (const auto& cs : sel.shortlist) {
        shortlist.push_back({{"edge", {cs.edge.first, cs.edge.second}},
                             {"score1", cs.score1},
                             {"bc", cs.bc},
                             {"dp", cs.dp},
                             {"score2", cs.score2}});
    }
    return {{"edge", {sel.edge.first, sel.edge.second}},
            {"gate_index", sel.gate_index},
            {"method", sel.method},
            {"shortlist", shortlist}};
}

struct NoTwoQubitGates : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Circuit load_circuit(const std::string& path) {
    try {
        return read_circuit_file(path);
    } catch (const CircuitParseError&) {
        throw;
    }
}

int cmd_select(const std::string& circuit_file, const std::string& method, int k, double alpha,
               double beta, double alpha2, double beta2, std::uint64_t seed, bool explain) {
    Circuit c = load_circuit(circuit_file);
    if (c.num_two_qubit() == 0) throw NoTwoQubitGates("circuit has no two-qubit gates");

    SelectParams params{k, alpha, beta, alpha2, beta2};
    CutSelection sel;
    if (method == "tw2s")
        sel = select_cut(c, params);
    else if (method == "stage1")
        sel = select_cut_stage1(c, params);
    else if (method == "random")
        sel = random_cut(c, seed);
    else
        throw std::runtime_error("unknown method '" + method + "'");

    json out = selection_json(sel);
    if (explain && method != "random") {
        InteractionGraph ig = extract(c);
        EliminationTrace trace = min_fill_trace(ig.base);
        json steps = json::array();
        for (std::size_t i = 0; i < trace.steps.size(); ++i) {
            const auto& st = trace.steps[i];
            json fills = json::array();
            for (const auto& [a, b] : st.fill_edges) fills.push_back({a, b});
            steps.push_back({{"step", i},
                             {"vertex", st.vertex},
                             {"bag", st.bag},
                             {"fill_edges", fills}});
        }
        out["trace"] = steps;
        out["tw_ub"] = trace.tw_ub;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_trace(const std::string& graph_file) {
    UGraph g = read_graph_file(graph_file);
    EliminationTrace trace = min_fill_trace(g);
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& st = trace.steps[i];
        json fills = json::array();
        for (const auto& [a, b] : st.fill_edges) fills.push_back({a, b});
        json line = {{"step", i}, {"vertex", st.vertex}, {"bag", st.bag}, {"fill_edges", fills}};
        std::cout << line.dump() << "\n";
    }
    return 0;
}

int cmd_route(const std::string& circuit_file, const std::string& coupling,
              const std::vector<std::uint64_t>& seeds, const std::string& dump_routed) {
    Circuit c = load_circuit(circuit_file);
    CouplingMap cm = coupling_from_flag(coupling);
    json per_seed = json::array();
    double total = 0.0;
    for (auto s : seeds) {
        RoutedResult r = route(c, cm, s);
        per_seed.push_back(
            {{"seed", s}, {"ecr", r.ecr_count}, {"swaps", r.swaps_inserted}});
        total += r.ecr_count;
        if (!dump_routed.empty() && s == seeds.front()) write_circuit_file(r.circuit, dump_routed);
    }
    json out = {{"ecr_mean", total / seeds.size()}, {"per_seed", per_seed}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_estimate(const std::string& circuit_file, const std::string& observable_file,
                 const std::string& cut, long budget, const std::string& strategy, double p_ecr,
                 double p_meas, std::uint64_t seed, bool exact, const std::string& coupling) {
    Circuit c = load_circuit(circuit_file);
    Observable o = read_observable_file(observable_file, c.n_qubits);
    NoiseModel noise{p_ecr, p_meas};

    std::vector<double> equiv;
    const std::vector<double>* equiv_ptr = nullptr;
    if (!coupling.empty()) {
        CouplingMap cm = coupling_from_flag(coupling);
        equiv = ecr_attribution(c, cm, {42});
        equiv_ptr = &equiv;
    }

    json out;
    if (cut == "none") {
        if (exact) {
            out = {{"value", exact_expectation(c, o, noise, equiv_ptr)}, {"mode", "exact"}};
        } else {
            auto r = sample_expectation(c, o, budget, noise, seed, equiv_ptr);
            out = {{"value", r.value}, {"shots", r.shots_used}, {"mode", "sampled"}};
        }
    } else {
        if (c.num_two_qubit() == 0) throw NoTwoQubitGates("circuit has no two-qubit gates");
        CutSelection sel;
        if (cut == "auto") {
            sel = select_cut(c);
        } else {
            sel.gate_index = std::stoi(cut);
            if (sel.gate_index < 0 || sel.gate_index >= static_cast<int>(c.gates.size()) ||
                !is_two_qubit(c.gates[sel.gate_index].kind))
                throw std::runtime_error("--cut must name a two-qubit gate index");
            sel.edge = make_edge(c.gates[sel.gate_index].q0, c.gates[sel.gate_index].q1);
            sel.method = "manual";
        }
        auto r = qpd_estimate(c, sel, o, budget, parse_strategy(strategy), noise, seed, exact,
                              equiv_ptr);
        out = {{"value", r.value},
               {"per_branch", r.per_branch},
               {"shots", r.shots_used},
               {"strategy", r.strategy},
               {"cut", selection_json(sel)},
               {"mode", exact ? "exact" : "sampled"}};
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_bench(const std::string& config_file, const std::string& out_csv, bool quiet) {
    RunConfig cfg = read_config_file(config_file);
    BenchResult result = run_bench(cfg);

    std::ofstream csv(out_csv);
    if (!csv) throw std::runtime_error("cannot open " + out_csv);
    csv << experiments_csv_header() << "\n";
    for (const auto& r : result.records) csv << to_csv_row(r) << "\n";

    if (!quiet) {
        std::cout << "condition,n,mean_adv,win_rate,p\n";
        for (const auto& s : result.summaries) {
            std::cout << s.condition << "," << s.n << "," << format_metric(s.mean_adv) << ","
                      << format_metric(s.win_rate) << ","
                      << (s.p_defined ? format_metric(s.p_value) : "n/a") << "\n";
        }
    }
    return 0;
}

int cmd_breakeven(const std::string& config_file, const std::string& out_csv) {
    RunConfig cfg = read_config_file(config_file);
    auto rows = run_breakeven(cfg);
    std::ofstream csv(out_csv);
    if (!csv) throw std::runtime_error("cannot open " + out_csv);
    csv << breakeven_csv_header() << "\n";
    for (const auto& r : rows) csv << to_csv_row(r) << "\n";
    std::cout << "wrote " << rows.size() << " rows to " << out_csv << "\n";
    return 0;
}

int cmd_failure_sweep(const std::string& config_file, const std::string& out_csv) {
    RunConfig cfg = read_config_file(config_file);
    auto cells = run_failure_sweep(cfg);
    std::ofstream csv(out_csv);
    if (!csv) throw std::runtime_error("cannot open " + out_csv);
    csv << winrate_csv_header() << "\n";
    for (const auto& c : cells) csv << to_csv_row(c) << "\n";
    std::cout << "wrote " << cells.size() << " rows to " << out_csv << "\n";
    return 0;
}

int cmd_generate(const std::string& family, const std::vector<std::string>& kv,
                 std::uint64_t seed, const std::string& out_file) {
    ConfigSection sec{family, {}};
    for (const auto& item : kv) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::runtime_error("--param expects key=value");
        sec.entries.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    GraphFamilySpec spec;
    if (family == "grid")
        spec = GraphFamilySpec::grid(static_cast<int>(sec.get_long("rows", 3)),
                                     static_cast<int>(sec.get_long("cols", 3)));
    else if (family == "ws")
        spec = GraphFamilySpec::watts_strogatz(static_cast<int>(sec.get_long("n", 20)),
                                               static_cast<int>(sec.get_long("k", 4)),
                                               sec.get_double("p", 0.1), seed);
    else if (family == "barbell")
        spec = GraphFamilySpec::barbell(static_cast<int>(sec.get_long("k", 3)),
                                        static_cast<int>(sec.get_long("m", 0)));
    else if (family == "sbm")
        spec = GraphFamilySpec::sbm(static_cast<int>(sec.get_long("n_per", 8)),
                                    static_cast<int>(sec.get_long("m", 2)),
                                    sec.get_double("p_in", 0.5), sec.get_double("p_out", 0.05),
                                    seed);
    else if (family == "er")
        spec = GraphFamilySpec::erdos_renyi(static_cast<int>(sec.get_long("n", 16)),
                                            sec.get_double("p", 0.3), seed);
    else if (family == "j1j2ring")
        spec = GraphFamilySpec::j1j2_ring(static_cast<int>(sec.get_long("n", 8)));
    else
        throw std::runtime_error("unknown family '" + family + "'");

    UGraph g = generate(spec);
    if (out_file.empty())
        std::cout << write_graph_text(g);
    else
        write_graph_file(g, out_file);
    return 0;
}

int cmd_circuit(const std::string& from_graph, const std::string& tfim, const std::string& out) {
    if (from_graph.empty() && tfim.empty())
        throw std::runtime_error("circuit needs --from-graph or --tfim");
    Circuit c;
    if (!from_graph.empty()) {
        c = circuit_from_graph(read_graph_file(from_graph));
    } else {
        ConfigSection sec{"tfim", {}};
        std::istringstream is(tfim);
        std::string item;
        while (std::getline(is, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw std::runtime_error("--tfim expects key=value,...");
            sec.entries.emplace_back(item.substr(0, eq), item.substr(eq + 1));
        }
        TfimSpec spec;
        spec.n = static_cast<int>(sec.get_long("n", 4));
        spec.trotter_steps = static_cast<int>(sec.get_long("T", 1));
        spec.j1 = sec.get_double("j1", 1.0);
        spec.j2 = sec.get_double("j2", 0.0);
        spec.h = sec.get_double("h", 0.7);
        spec.rzz_angle = sec.get_double("rzz_angle", 3.14159265358979323846);
        spec.dt_x = sec.get_double("dt_x", 0.1);
        spec.topology =
            sec.get("topology", "chain") == "j1j2_ring" ? TfimTopology::J1J2Ring : TfimTopology::Chain;
        c = build_tfim(spec);
    }
    if (out.empty())
        std::cout << emit_circuit(c);
    else
        write_circuit_file(c, out);
    return 0;
}

int cmd_interaction(const std::string& circuit_file) {
    Circuit c = load_circuit(circuit_file);
    std::cout << write_interaction_text(extract(c));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"treewidth-guided gate-cut selection toolkit"};
    app.require_subcommand(1);

    // select
    std::string circuit_file, method = "tw2s";
    int k = 3;
    double alpha = 1.0, beta = 1.0, alpha2 = 1.0, beta2 = 0.3;
    std::uint64_t seed = 42;
    bool explain = false;
    auto* select = app.add_subcommand("select", "pick a cut gate for a circuit");
    select->add_option("circuit", circuit_file)->required();
    select->add_option("--method", method, "tw2s | stage1 | random");
    select->add_option("--k", k);
    select->add_option("--alpha", alpha);
    select->add_option("--beta", beta);
    select->add_option("--alpha2", alpha2);
    select->add_option("--beta2", beta2);
    select->add_option("--seed", seed);
    select->add_flag("--explain", explain, "include the elimination trace");

    // trace
    std::string graph_file;
    auto* trace = app.add_subcommand("trace", "min-fill elimination trace as JSON lines");
    trace->add_option("graph", graph_file)->required();

    // interaction
    std::string inter_circuit;
    auto* inter = app.add_subcommand("interaction", "dump the weighted interaction graph");
    inter->add_option("circuit", inter_circuit)->required();

    // route
    std::string route_circuit_file, coupling = "heavyhex127", dump_routed;
    std::vector<std::uint64_t> seeds{42, 123, 7};
    auto* route_cmd = app.add_subcommand("route", "route a circuit and count native 2q gates");
    route_cmd->add_option("circuit", route_circuit_file)->required();
    route_cmd->add_option("--coupling", coupling, "heavyhex127 or file:PATH");
    route_cmd->add_option("--seeds", seeds)->delimiter(',');
    route_cmd->add_option("--dump-routed", dump_routed);

    // estimate
    std::string est_circuit, est_observable, est_cut = "none", est_strategy = "shared";
    std::string est_coupling;
    long est_budget = 10000;
    double p_ecr = 0.0, p_meas = 0.0;
    std::uint64_t est_seed = 42;
    bool est_exact = false;
    auto* est = app.add_subcommand("estimate", "estimate an observable, optionally with a QPD cut");
    est->add_option("circuit", est_circuit)->required();
    est->add_option("--observable", est_observable)->required();
    est->add_option("--cut", est_cut, "none | auto | gate index");
    est->add_option("--budget", est_budget);
    est->add_option("--strategy", est_strategy, "shared | per_subcircuit_1_5x");
    est->add_option("--p-ecr", p_ecr);
    est->add_option("--p-meas", p_meas);
    est->add_option("--seed", est_seed);
    est->add_flag("--exact", est_exact, "exact expectations instead of sampling");
    est->add_option("--coupling", est_coupling,
                    "derive per-gate noise multiplicities from routing");

    // bench / breakeven / failure-sweep
    std::string cfg_file, out_csv = "experiments.csv";
    bool quiet = false;
    auto* bench = app.add_subcommand("bench", "family sweep: TW2S vs random delta-ECR");
    bench->add_option("--config", cfg_file)->required();
    bench->add_option("--out", out_csv);
    bench->add_flag("--quiet", quiet);

    std::string be_cfg, be_out = "breakeven.csv";
    auto* breakeven = app.add_subcommand("breakeven", "closed-form M* grid");
    breakeven->add_option("--config", be_cfg)->required();
    breakeven->add_option("--out", be_out);

    std::string fs_cfg, fs_out = "winrate.csv";
    auto* failure = app.add_subcommand("failure-sweep", "noisy TFIM win-rate grid");
    failure->add_option("--config", fs_cfg)->required();
    failure->add_option("--out", fs_out);

    // generate / circuit
    std::string gen_family, gen_out;
    std::vector<std::string> gen_params;
    std::uint64_t gen_seed = 42;
    auto* gen = app.add_subcommand("generate", "write a benchmark graph");
    gen->add_option("family", gen_family, "grid|ws|barbell|sbm|er|j1j2ring")->required();
    gen->add_option("--param", gen_params, "key=value (repeatable)");
    gen->add_option("--seed", gen_seed);
    gen->add_option("--out", gen_out);

    std::string circ_graph, circ_tfim, circ_out;
    auto* circ = app.add_subcommand("circuit", "build a circuit from a graph or TFIM spec");
    circ->add_option("--from-graph", circ_graph);
    circ->add_option("--tfim", circ_tfim, "key=value,... (n,T,j1,j2,h,rzz_angle,dt_x,topology)");
    circ->add_option("--out", circ_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (select->parsed())
            return cmd_select(circuit_file, method, k, alpha, beta, alpha2, beta2, seed, explain);
        if (trace->parsed()) return cmd_trace(graph_file);
        if (inter->parsed()) return cmd_interaction(inter_circuit);
        if (route_cmd->parsed()) return cmd_route(route_circuit_file, coupling, seeds, dump_routed);
        if (est->parsed())
            return cmd_estimate(est_circuit, est_observable, est_cut, est_budget, est_strategy,
                                p_ecr, p_meas, est_seed, est_exact, est_coupling);
        if (bench->parsed()) return cmd_bench(cfg_file, out_csv, quiet);
        if (breakeven->parsed()) return cmd_breakeven(be_cfg, be_out);
        if (failure->parsed()) return cmd_failure_sweep(fs_cfg, fs_out);
        if (gen->parsed()) return cmd_generate(gen_family, gen_params, gen_seed, gen_out);
        if (circ->parsed()) return cmd_circuit(circ_graph, circ_tfim, circ_out);
    } catch (const CircuitParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const NoTwoQubitGates& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoTwoQubit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

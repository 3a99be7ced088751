#include "twcut/pipelines.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "twcut/breakeven.hpp"
#include "twcut/interaction.hpp"
#include "twcut/pauli.hpp"
#include "twcut/rng.hpp"

namespace twcut {

namespace {

std::string edge_type(const Edge& e, const std::vector<int>& partition) {
    if (partition.empty()) return "";
    return partition[e.first] == partition[e.second] ? "intra" : "inter";
}

}  // namespace

ExperimentRecord run_bench_instance(const BenchInstance& inst, const CouplingMap& cm,
                                    const BenchOptions& opt) {
    ExperimentRecord rec;
    rec.condition = inst.condition;
    rec.instance = inst.instance;
    rec.graph_seed = inst.graph_seed;
    try {
        // Baseline routes can seed warm starts for the cut variants.
        std::vector<RoutedResult> base;
        double base_sum = 0.0;
        for (auto s : opt.route_seeds) {
            base.push_back(route(inst.circuit, cm, s, opt.router));
            base_sum += base.back().ecr_count;
        }
        rec.ecr_uncut = base_sum / static_cast<double>(opt.route_seeds.size());

        auto cut_ecr = [&](int gate_index) {
            Circuit cut_circuit = remove_gate(inst.circuit, gate_index);
            double total = 0.0;
            for (std::size_t k = 0; k < opt.route_seeds.size(); ++k) {
                auto warm = opt.warm_start_cuts
                                ? std::optional<std::vector<int>>(base[k].initial_layout)
                                : std::nullopt;
                total += route(cut_circuit, cm, opt.route_seeds[k], opt.router, std::nullopt,
                               warm)
                             .ecr_count;
            }
            return total / static_cast<double>(opt.route_seeds.size());
        };

        CutSelection tw2s = select_cut(inst.circuit, opt.select);
        rec.tw2s_edge = tw2s.edge;
        rec.ecr_tw2s_cut = cut_ecr(tw2s.gate_index);
        rec.delta_tw2s = rec.ecr_uncut - rec.ecr_tw2s_cut;

        double random_sum = 0.0;
        for (int t = 0; t < opt.random_trials; ++t) {
            CutSelection rnd =
                random_cut(inst.circuit, Rng::derive(opt.base_seed, 1000 + t).next_u64());
            random_sum += cut_ecr(rnd.gate_index);
        }
        rec.ecr_random_cut_mean = random_sum / opt.random_trials;
        rec.delta_random_mean = rec.ecr_uncut - rec.ecr_random_cut_mean;
        rec.delta_adv = rec.delta_tw2s - rec.delta_random_mean;
        rec.win = rec.delta_adv > 0.0;

        // Soft sanity: removing a gate should not make routing markedly
        // worse; flagged on stderr, never asserted.
        double band = 0.0;
        for (std::size_t k = 0; k < base.size(); ++k) {
            double dev = base[k].ecr_count - rec.ecr_uncut;
            band = std::max(band, std::fabs(dev));
        }
        if (rec.delta_tw2s < -(band + 3.0))
            std::fprintf(stderr, "note: %s cut increased routed ECR by %.1f (band %.1f)\n",
                         rec.instance.c_str(), -rec.delta_tw2s, band);

        if (!inst.partition.empty()) {
            rec.tw2s_edge_type = edge_type(tw2s.edge, inst.partition);
            CutSelection s1 = select_cut_stage1(inst.circuit, opt.select);
            rec.stage1_edge_type = edge_type(s1.edge, inst.partition);
            InteractionGraph ig = extract(inst.circuit);
            rec.r_inter = inter_community_fraction(ig.base, inst.partition);
        }
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    return rec;
}

namespace {

std::vector<int> blocks(int n_per, int m) {
    std::vector<int> p(n_per * m);
    for (int i = 0; i < n_per * m; ++i) p[i] = i / n_per;
    return p;
}

void expand_one(const ConfigSection& sw, std::vector<BenchInstance>& out) {
    const std::string family = sw.get("family");
    auto seeds = sw.get_long("seeds", 1);
    auto seed0 = static_cast<std::uint64_t>(sw.get_long("seed0", 1));

    auto push = [&](const std::string& condition, const std::string& instance, std::uint64_t seed,
                    Circuit c, std::vector<int> partition) {
        BenchInstance inst;
        inst.condition = condition;
        inst.instance = instance;
        inst.graph_seed = seed;
        inst.circuit = std::move(c);
        inst.partition = std::move(partition);
        out.push_back(std::move(inst));
    };

    // Conditions follow the summary-table layout: one row for all grids,
    // one per barbell clique size, one per WS degree, one per SBM mu.
    if (family == "grid") {
        for (long r : sw.get_longs("rows"))
            for (long c : sw.get_longs("cols")) {
                auto g = generate(GraphFamilySpec::grid(static_cast<int>(r), static_cast<int>(c)));
                push("grid", "grid_" + std::to_string(r) + "x" + std::to_string(c), 0,
                     circuit_from_graph(g), {});
            }
    } else if (family == "ws") {
        long n = sw.get_long("n", 20);
        double p = sw.get_double("p", 0.1);
        for (long k : sw.get_longs("k"))
            for (long s = 0; s < seeds; ++s) {
                std::uint64_t seed = seed0 + static_cast<std::uint64_t>(s);
                auto g = generate(GraphFamilySpec::watts_strogatz(static_cast<int>(n),
                                                                  static_cast<int>(k), p, seed));
                std::ostringstream cond;
                cond << "ws_k" << k << "_p" << p << "_n" << n;
                push(cond.str(), cond.str() + "/s" + std::to_string(seed), seed,
                     circuit_from_graph(g), {});
            }
    } else if (family == "barbell") {
        for (long k : sw.get_longs("k"))
            for (long m : sw.get_longs("m")) {
                auto g = generate(GraphFamilySpec::barbell(static_cast<int>(k), static_cast<int>(m)));
                std::string cond = "barbell_k" + std::to_string(k);
                push(cond, cond + "_m" + std::to_string(m), 0, circuit_from_graph(g), {});
            }
    } else if (family == "sbm") {
        long n_per = sw.get_long("n_per", 8);
        long m = sw.get_long("m", 2);
        double p_in = sw.get_double("p_in", 0.5);
        for (double mu : sw.get_doubles("mu")) {
            double p_out = mu * p_in;
            for (long s = 0; s < seeds; ++s) {
                std::uint64_t seed = seed0 + static_cast<std::uint64_t>(s);
                auto g = generate(GraphFamilySpec::sbm(static_cast<int>(n_per),
                                                       static_cast<int>(m), p_in, p_out, seed));
                std::ostringstream cond;
                cond << "sbm_mu" << mu << "_n" << n_per * m << "_m" << m;
                push(cond.str(), cond.str() + "/s" + std::to_string(seed), seed,
                     circuit_from_graph(g), blocks(static_cast<int>(n_per), static_cast<int>(m)));
            }
        }
    } else if (family == "er") {
        long n = sw.get_long("n", 16);
        for (double p : sw.get_doubles("p"))
            for (long s = 0; s < seeds; ++s) {
                std::uint64_t seed = seed0 + static_cast<std::uint64_t>(s);
                auto g = generate(GraphFamilySpec::erdos_renyi(static_cast<int>(n), p, seed));
                std::ostringstream cond;
                cond << "er_n" << n << "_p" << p;
                push(cond.str(), cond.str() + "/s" + std::to_string(seed), seed,
                     circuit_from_graph(g), {});
            }
    } else if (family == "j1j2") {
        double j1 = sw.get_double("j1", 1.0);
        double j2 = sw.get_double("j2", 0.9);
        double h = sw.get_double("h", 1.5);
        for (long n : sw.get_longs("n"))
            for (long t : sw.get_longs("T")) {
                TfimSpec spec;
                spec.n = static_cast<int>(n);
                spec.trotter_steps = static_cast<int>(t);
                spec.j1 = j1;
                spec.j2 = j2;
                spec.h = h;
                spec.topology = TfimTopology::J1J2Ring;
                std::string cond = "j1j2_n" + std::to_string(n) + "_T" + std::to_string(t);
                push(cond, cond, 0, build_tfim(spec), {});
            }
    } else {
        throw std::invalid_argument("unknown sweep family '" + family + "'");
    }
}

CouplingMap coupling_from_config(const RunConfig& cfg) {
    std::string choice = "heavyhex127";
    if (const auto* bench = cfg.find("bench")) choice = bench->get("coupling", choice);
    if (const auto* failure = cfg.find("failure")) choice = failure->get("coupling", choice);
    if (choice == "heavyhex127") return heavy_hex(7);
    if (choice.rfind("file:", 0) == 0) return CouplingMap(read_graph_file(choice.substr(5)));
    throw std::invalid_argument("unknown coupling '" + choice + "'");
}

}  // namespace

std::vector<BenchInstance> expand_sweeps(const RunConfig& cfg) {
    std::vector<BenchInstance> out;
    for (const auto* sw : cfg.find_all("sweep")) expand_one(*sw, out);
    return out;
}

BenchResult run_bench(const RunConfig& cfg,
                      const std::function<void(const ExperimentRecord&)>& on_record) {
    BenchOptions opt;
    if (const auto* bench = cfg.find("bench")) {
        if (bench->has("route_seeds")) {
            opt.route_seeds.clear();
            for (long s : bench->get_longs("route_seeds"))
                opt.route_seeds.push_back(static_cast<std::uint64_t>(s));
        }
        opt.random_trials = static_cast<int>(bench->get_long("random_trials", 5));
        opt.select.k = static_cast<int>(bench->get_long("k", 3));
        opt.select.alpha = bench->get_double("alpha", 1.0);
        opt.select.beta = bench->get_double("beta", 1.0);
        opt.select.alpha2 = bench->get_double("alpha2", 1.0);
        opt.select.beta2 = bench->get_double("beta2", 0.3);
        opt.base_seed = static_cast<std::uint64_t>(bench->get_long("base_seed", 1));
        opt.router.layout_candidates =
            static_cast<int>(bench->get_long("router_candidates", opt.router.layout_candidates));
        opt.router.reverse_refine = bench->get_long("router_reverse", opt.router.reverse_refine ? 1 : 0) != 0;
        opt.warm_start_cuts = bench->get_long("warm_start_cuts", 1) != 0;
    }
    CouplingMap cm = coupling_from_config(cfg);
    auto instances = expand_sweeps(cfg);

    BenchResult result;
    result.records.resize(instances.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < static_cast<int>(instances.size()); ++i) {
        BenchOptions local = opt;
        local.base_seed = Rng::derive(opt.base_seed, static_cast<std::uint64_t>(i)).next_u64();
        result.records[i] = run_bench_instance(instances[i], cm, local);
    }
    if (on_record)
        for (const auto& r : result.records) on_record(r);
    result.summaries = summarize(result.records);
    return result;
}

std::vector<BreakevenRow> run_breakeven(const RunConfig& cfg) {
    const auto* sec = cfg.find("breakeven");
    if (!sec) throw std::invalid_argument("config needs a [breakeven] section");
    BreakevenParams bp;
    bp.p = sec->get_double("p", 0.005);
    bp.n_ecr = sec->get_double("n", 200.0);
    bp.sigma_h = sec->get_double("sigma_h", 7.0);
    auto deltas = sec->get_doubles("delta_n");
    auto h_values = sec->get_doubles("h_ideal");
    if (deltas.empty() || h_values.empty())
        throw std::invalid_argument("[breakeven] needs delta_n and h_ideal lists");

    std::vector<BreakevenRow> rows;
    for (double h : h_values)
        for (double dn : deltas) {
            BreakevenParams row_bp = bp;
            row_bp.delta_n = dn;
            row_bp.h_ideal = h;
            double ms = h == 0.0 ? std::numeric_limits<double>::infinity() : m_star(row_bp);
            rows.push_back({bp.p, bp.n_ecr, dn, bp.sigma_h, h, ms});
        }
    return rows;
}

std::string breakeven_csv_header() { return "p,n,delta_n,sigma_h,h_ideal,m_star"; }

std::string to_csv_row(const BreakevenRow& row) {
    std::ostringstream os;
    os << format_metric(row.p) << "," << format_metric(row.n) << "," << format_metric(row.delta_n)
       << "," << format_metric(row.sigma_h) << "," << format_metric(row.h_ideal) << ","
       << format_metric(row.m_star);
    return os.str();
}

namespace {

struct FailureCellSetup {
    Circuit circuit;
    Observable observable;
    double h_ideal = 0.0;
    CutSelection cut;
    double delta_ecr = 0.0;
    std::vector<double> base_equiv;  // per gate of the uncut circuit
    std::vector<double> cut_equiv;   // per gate, cut entry zero, from cut routing
};

// Builds the TFIM chain cell: route, pick the best delta-ECR candidate from
// the stage-1 shortlist, and derive noise multiplicities for both circuits.
FailureCellSetup setup_failure_cell(int n, int trotter, const CouplingMap& cm,
                                    std::uint64_t route_seed, const SelectParams& params) {
    FailureCellSetup s;
    TfimSpec spec;
    spec.n = n;
    spec.trotter_steps = trotter;
    spec.topology = TfimTopology::Chain;
    s.circuit = build_tfim(spec);
    s.observable = tfim_observable(spec);
    s.h_ideal = exact_expectation(s.circuit, s.observable);

    std::vector<std::uint64_t> seeds{route_seed};
    const double base_ecr = ecr_count(s.circuit, cm, seeds);

    InteractionGraph ig = extract(s.circuit);
    Stage1Scores s1 = stage1_scores(ig, params.alpha, params.beta);
    auto cand = shortlist(s1, ig, params.k);
    double best_delta = -1e18;
    for (const Edge& e : cand) {
        int gi = ig.occurrences_of(e).front();
        double d = base_ecr - ecr_count(remove_gate(s.circuit, gi), cm, seeds);
        if (d > best_delta) {
            best_delta = d;
            s.cut.edge = e;
            s.cut.gate_index = gi;
        }
    }
    s.cut.method = "stage1_oracle";
    s.delta_ecr = best_delta;

    s.base_equiv = ecr_attribution(s.circuit, cm, seeds);
    auto cut_attr = ecr_attribution(remove_gate(s.circuit, s.cut.gate_index), cm, seeds);
    s.cut_equiv.assign(s.circuit.gates.size(), 0.0);
    for (std::size_t i = 0, j = 0; i < s.circuit.gates.size(); ++i) {
        if (static_cast<int>(i) == s.cut.gate_index) continue;
        s.cut_equiv[i] = cut_attr[j++];
    }
    return s;
}

}  // namespace

std::vector<FailureCell> run_failure_sweep(const RunConfig& cfg) {
    const auto* sec = cfg.find("failure");
    if (!sec) throw std::invalid_argument("config needs a [failure] section");
    auto ns = sec->get_longs("n");
    auto ts = sec->get_longs("T");
    auto budgets = sec->get_longs("budgets");
    auto strategies = sec->get_list("strategies");
    int reps = static_cast<int>(sec->get_long("reps", 5));
    NoiseModel noise;
    noise.p_ecr = sec->get_double("p_ecr", 0.005);
    noise.p_meas = sec->get_double("p_meas", 0.01);
    auto route_seed = static_cast<std::uint64_t>(sec->get_long("route_seed", 42));
    auto base_seed = static_cast<std::uint64_t>(sec->get_long("base_seed", 7));
    if (ns.empty() || ts.empty() || budgets.empty() || strategies.empty())
        throw std::invalid_argument("[failure] needs n, T, budgets, strategies");

    CouplingMap cm = coupling_from_config(cfg);
    SelectParams params;

    std::vector<FailureCell> cells;
    for (long n : ns) {
        for (long t : ts) {
            auto setup = setup_failure_cell(static_cast<int>(n), static_cast<int>(t), cm,
                                            route_seed, params);
            for (long budget : budgets) {
                for (const auto& strat_name : strategies) {
                    ShotStrategy strat = parse_strategy(strat_name);
                    FailureCell cell;
                    cell.n = static_cast<int>(n);
                    cell.trotter = static_cast<int>(t);
                    cell.budget = budget;
                    cell.strategy = strat_name;
                    cell.p_ecr = noise.p_ecr;
                    cell.p_meas = noise.p_meas;
                    cell.reps = reps;
                    cell.h_ideal = setup.h_ideal;
                    cell.delta_ecr = setup.delta_ecr;

                    int wins = 0;
                    double err_base_sum = 0.0, err_qpd_sum = 0.0;
                    for (int r = 0; r < reps; ++r) {
                        std::uint64_t rep_seed =
                            Rng::derive(base_seed, (static_cast<std::uint64_t>(n) << 40) ^
                                                       (static_cast<std::uint64_t>(t) << 32) ^
                                                       (static_cast<std::uint64_t>(budget) << 8) ^
                                                       static_cast<std::uint64_t>(
                                                           r + (strat == ShotStrategy::Shared
                                                                    ? 0
                                                                    : 1000)))
                                .next_u64();
                        double base = sample_expectation(setup.circuit, setup.observable, budget,
                                                         noise, rep_seed, &setup.base_equiv)
                                          .value;
                        double qpd = qpd_estimate(setup.circuit, setup.cut, setup.observable,
                                                  budget, strat, noise, rep_seed ^ 0x5bd1e995,
                                                  false, &setup.cut_equiv)
                                         .value;
                        double err_base = std::fabs(base - setup.h_ideal);
                        double err_qpd = std::fabs(qpd - setup.h_ideal);
                        err_base_sum += err_base;
                        err_qpd_sum += err_qpd;
                        wins += err_qpd < err_base ? 1 : 0;
                    }
                    cell.win_rate = static_cast<double>(wins) / reps;
                    cell.mean_err_base = err_base_sum / reps;
                    cell.mean_err_qpd = err_qpd_sum / reps;
                    cells.push_back(cell);
                }
            }
        }
    }
    return cells;
}

std::string winrate_csv_header() {
    return "n,T,budget,strategy,p_ecr,p_meas,reps,h_ideal,delta_ecr,win_rate,mean_err_base,"
           "mean_err_qpd";
}

std::string to_csv_row(const FailureCell& c) {
    std::ostringstream os;
    os << c.n << "," << c.trotter << "," << c.budget << "," << c.strategy << ","
       << format_metric(c.p_ecr) << "," << format_metric(c.p_meas) << "," << c.reps << ","
       << format_metric(c.h_ideal) << "," << format_metric(c.delta_ecr) << ","
       << format_metric(c.win_rate) << "," << format_metric(c.mean_err_base) << ","
       << format_metric(c.mean_err_qpd);
    return os.str();
}

std::vector<BiasExchangePoint> bias_exchange_sweep(double p_ecr,
                                                   const std::vector<double>& p_meas_values) {
    // Fixed 4-qubit CX chain; the state stays |0000> so every Z-term is 1
    // ideally and the cut removes exactly one unit of 2q noise.
    Circuit c(4);
    c.add(Gate::cx(0, 1));
    c.add(Gate::cx(1, 2));
    c.add(Gate::cx(2, 3));
    c.add(Gate::cx(0, 1));
    c.add(Gate::cx(1, 2));
    c.add(Gate::cx(2, 3));
    Observable o;
    o.n_qubits = 4;
    o.add(1.0, "ZZII");
    o.add(1.0, "IZZI");
    o.add(1.0, "IIZZ");

    const double ideal = exact_expectation(c, o);
    CutSelection cut;
    cut.gate_index = 3;  // second CX(0,1); delta-ECR = 1 on any path embedding
    cut.edge = {0, 1};
    cut.method = "fixed";

    std::vector<BiasExchangePoint> out;
    for (double pm : p_meas_values) {
        NoiseModel noise;
        noise.p_ecr = p_ecr;
        noise.p_meas = pm;
        double base = exact_expectation(c, o, noise);
        double qpd =
            qpd_estimate(c, cut, o, 0, ShotStrategy::Shared, noise, 0, /*exact_mode=*/true).value;
        out.push_back({pm, std::fabs(base - ideal) - std::fabs(qpd - ideal)});
    }
    return out;
}

}  // namespace twcut

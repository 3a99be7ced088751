#include <doctest.h>

#include <cmath>
#include <limits>

#include "twcut/breakeven.hpp"
#include "twcut/config.hpp"
#include "twcut/pipelines.hpp"
#include "twcut/records.hpp"
#include "twcut/rng.hpp"
#include "twcut/stats.hpp"

using namespace twcut;

namespace {

// Long-double re-evaluation, factored differently from the implementation.
long double m_star_oracle(long double p, long double n, long double dn, long double sigma,
                          long double h) {
    long double a = 1.0L - std::exp(-p * n);
    long double b = 1.0L - std::exp(-p * (n - dn));
    return 8.0L * sigma * sigma / (h * h * (a - b) * (a + b));
}

BreakevenParams bp(double p, double n, double dn, double sigma, double h) {
    BreakevenParams out;
    out.p = p;
    out.n_ecr = n;
    out.delta_n = dn;
    out.sigma_h = sigma;
    out.h_ideal = h;
    return out;
}

}  // namespace

TEST_CASE("m_star reference point") {
    auto params = bp(0.005, 200, 15, 7, 5);
    double value = m_star(params);
    double oracle = static_cast<double>(m_star_oracle(0.005L, 200.0L, 15.0L, 7.0L, 5.0L));
    CHECK(std::abs(value - oracle) / oracle < 1e-9);
    CHECK(value < 1000.0);
    CHECK(value > 400.0);
}

TEST_CASE("m_star limits") {
    CHECK(std::isinf(m_star(bp(0.005, 200, 15, 7, 0))));

    // Largest reduction minimizes m_star over delta_n.
    double at_full = m_star(bp(0.01, 300, 300, 5, 3));
    for (double dn : {10.0, 50.0, 150.0, 299.0})
        CHECK(m_star(bp(0.01, 300, dn, 5, 3)) > at_full);

    CHECK_THROWS_AS(m_star(bp(0.005, 200, 0, 7, 5)), std::invalid_argument);
    CHECK_THROWS_AS(m_star(bp(0.005, 200, 300, 7, 5)), std::invalid_argument);
}

TEST_CASE("m_star monotonicity properties") {
    Rng rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        double p = 0.001 + rng.next_double() * 0.02;
        double n = 50 + rng.next_double() * 400;
        double dn = 1 + rng.next_double() * (n - 2);
        double sigma = 0.5 + rng.next_double() * 10;
        double h = 0.5 + rng.next_double() * 10;
        double base = m_star(bp(p, n, dn, sigma, h));
        // Strictly decreasing in delta_n and in h_ideal.
        double dn2 = dn + (n - dn) * 0.5;
        CHECK(m_star(bp(p, n, dn2, sigma, h)) < base);
        CHECK(m_star(bp(p, n, dn, sigma, h * 1.5)) < base);
    }
}

TEST_CASE("bias model") {
    auto params = bp(0.005, 200, 15, 7, 5);
    CHECK(bias(params, 0.0) == doctest::Approx(0.0));
    CHECK(bias(params, 200.0) == doctest::Approx(5.0 * (1.0 - std::exp(-1.0))).epsilon(1e-12));
    CHECK(bias(params, 200.0) == doctest::Approx(3.1606027941427883).epsilon(1e-12));
    // Saturation at large pN.
    BreakevenParams hot = params;
    hot.p = 0.9;
    CHECK(bias(hot, 1e6) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("mse breakeven equivalence") {
    Rng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        double p = 0.002 + rng.next_double() * 0.01;
        double n = 100 + rng.next_double() * 200;
        double dn = 1 + rng.next_double() * (n / 2);
        double sigma = 1 + rng.next_double() * 8;
        double h = 1 + rng.next_double() * 8;
        auto params = bp(p, n, dn, sigma, h);
        double ms = m_star(params);
        if (!std::isfinite(ms) || ms < 2 || ms > 1e7) continue;
        long lo = static_cast<long>(std::floor(ms)) ;
        long hi = static_cast<long>(std::ceil(ms)) + 1;
        auto below = mse_model(params, std::max(1L, lo - 1), ShotStrategy::Shared);
        auto above = mse_model(params, hi, ShotStrategy::Shared);
        CHECK(below.qpd >= below.base - 1e-12);
        CHECK(above.qpd <= above.base + 1e-12);

        // Per-subcircuit cancels the variance penalty: QPD wins at any M.
        auto per = mse_model(params, 10, ShotStrategy::PerSubcircuit15);
        CHECK(per.qpd < per.base);
    }

    // delta_n = 0 under the shared strategy never wins.
    BreakevenParams flat = bp(0.005, 200, 1, 7, 5);
    flat.delta_n = 0.0;
    for (long m : {1L, 100L, 1000000L}) {
        auto pair = mse_model(flat, m, ShotStrategy::Shared);
        CHECK(pair.qpd > pair.base);
    }
}

TEST_CASE("one-sample t-test") {
    auto sym = t_test_one_sample({-1, 1, -1, 1});
    CHECK(sym.t == doctest::Approx(0.0));
    CHECK(sym.p == doctest::Approx(1.0));

    auto tight = t_test_one_sample({1, 1, 1, 1, 1.0001, 0.9999});
    CHECK(tight.p < 0.001);

    // n=2, values {0,2}: t = 1 with 1 dof, two-sided p = 0.5 exactly.
    auto two = t_test_one_sample({0, 2});
    CHECK(two.t == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(two.p == doctest::Approx(0.5).epsilon(1e-9));

    CHECK_THROWS_AS(t_test_one_sample({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(t_test_one_sample({2.0, 2.0, 2.0}), std::invalid_argument);
}

TEST_CASE("two-sample t-test") {
    std::vector<double> a{1.0, 2.0, 3.0, 4.0};
    auto same = t_test_two_sample(a, a);
    CHECK(same.t == doctest::Approx(0.0));
    CHECK(same.p == doctest::Approx(1.0));

    std::vector<double> b;
    for (double x : a) b.push_back(x + 1000.0);
    CHECK(t_test_two_sample(a, b).p < 1e-6);
}

TEST_CASE("student t against table values") {
    // Two-sided critical points at alpha = 0.05 from a published t-table.
    CHECK(student_t_two_sided(2.571, 5) == doctest::Approx(0.05).epsilon(2e-3));
    CHECK(student_t_two_sided(2.228, 10) == doctest::Approx(0.05).epsilon(2e-3));
    CHECK(student_t_two_sided(2.042, 30) == doctest::Approx(0.05).epsilon(2e-3));
}

TEST_CASE("student t against numerical integration") {
    // Simpson quadrature of the t density over [0, t].
    auto cdf_part = [](double t, double dof) {
        const int steps = 20000;
        double log_norm = std::lgamma((dof + 1) / 2) - std::lgamma(dof / 2) -
                          0.5 * std::log(dof * 3.14159265358979323846);
        auto density = [&](double x) {
            return std::exp(log_norm - (dof + 1) / 2 * std::log1p(x * x / dof));
        };
        double h = t / steps;
        double acc = density(0.0) + density(t);
        for (int i = 1; i < steps; ++i) acc += density(i * h) * (i % 2 ? 4.0 : 2.0);
        return acc * h / 3.0;
    };
    for (double dof : {1.0, 2.0, 3.0, 5.0, 10.0, 30.0}) {
        for (double t : {0.25, 0.5, 1.0, 1.7, 2.5, 4.0}) {
            double two_sided = 1.0 - 2.0 * cdf_part(t, dof);
            CHECK(std::abs(student_t_two_sided(t, dof) - two_sided) < 1e-6);
        }
    }
}

TEST_CASE("incomplete beta endpoints") {
    CHECK(incomplete_beta(2, 3, 0.0) == 0.0);
    CHECK(incomplete_beta(2, 3, 1.0) == 1.0);
    // I_x(1,1) = x.
    CHECK(incomplete_beta(1, 1, 0.37) == doctest::Approx(0.37).epsilon(1e-12));
    // Symmetry I_x(a,b) = 1 - I_{1-x}(b,a).
    CHECK(incomplete_beta(2.5, 1.5, 0.3) ==
          doctest::Approx(1.0 - incomplete_beta(1.5, 2.5, 0.7)).epsilon(1e-12));
}

TEST_CASE("enrichment") {
    std::vector<ExperimentRecord> records;
    for (int i = 0; i < 10; ++i) {
        ExperimentRecord r;
        r.stage1_edge_type = "inter";
        r.r_inter = 1.0 / 7.0;
        records.push_back(r);
    }
    CHECK(enrichment(records) == doctest::Approx(7.0).epsilon(1e-12));

    // A uniform selector converges to enrichment 1.
    Rng rng(3);
    std::vector<ExperimentRecord> uniform;
    const double r_inter = 0.25;
    for (int i = 0; i < 20000; ++i) {
        ExperimentRecord r;
        r.stage1_edge_type = rng.next_double() < r_inter ? "inter" : "intra";
        r.r_inter = r_inter;
        uniform.push_back(r);
    }
    CHECK(enrichment(uniform) == doctest::Approx(1.0).epsilon(0.05));

    CHECK(std::isnan(enrichment({})));
}

TEST_CASE("summaries") {
    std::vector<ExperimentRecord> records;
    for (int i = 0; i < 5; ++i) {
        ExperimentRecord r;
        r.condition = "a";
        r.instance = "a/" + std::to_string(i);
        r.delta_adv = 1.0 + 0.1 * i;
        r.win = true;
        records.push_back(r);
    }
    ExperimentRecord bad;
    bad.condition = "a";
    bad.error = "boom";
    records.push_back(bad);

    auto sums = summarize(records);
    REQUIRE(sums.size() == 1);
    CHECK(sums[0].n == 5);
    CHECK(sums[0].win_rate == doctest::Approx(1.0));
    CHECK(sums[0].mean_adv == doctest::Approx(1.2));
    CHECK(sums[0].p_defined);
    CHECK(sums[0].p_value < 0.01);
}

TEST_CASE("csv serialization") {
    ExperimentRecord r;
    r.condition = "sbm_mu0.1";
    r.instance = "sbm_mu0.1/s3";
    r.graph_seed = 3;
    r.ecr_uncut = 100;
    r.ecr_tw2s_cut = 90;
    r.delta_tw2s = 10;
    r.delta_adv = 4.5;
    r.win = true;
    r.tw2s_edge = {2, 9};
    r.tw2s_edge_type = "inter";
    r.stage1_edge_type = "intra";
    r.r_inter = 0.125;
    auto row = to_csv_row(r);
    auto header = experiments_csv_header();
    CHECK(row.find("sbm_mu0.1/s3") != std::string::npos);
    CHECK(row.find("4.5") != std::string::npos);
    CHECK(std::count(row.begin(), row.end(), ',') ==
          std::count(header.begin(), header.end(), ','));

    CHECK(format_metric(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_metric(0.5) == "0.5");
}

TEST_CASE("config round trip") {
    std::string text =
        "[bench]\n"
        "route_seeds = 42 123 7\n"
        "k = 3\n"
        "[sweep]\n"
        "family = sbm\n"
        "mu = 0.10 0.15\n"
        "[sweep]\n"
        "family = barbell\n"
        "k = 3 4\n"
        "m = 0 1 2 3\n";
    auto cfg = parse_config(text);
    REQUIRE(cfg.sections.size() == 3);
    CHECK(cfg.find("bench")->get_longs("route_seeds") == std::vector<long>{42, 123, 7});
    CHECK(cfg.find_all("sweep").size() == 2);

    auto round = parse_config(emit_config(cfg));
    CHECK(round == cfg);

    // Property: random configs round-trip.
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        RunConfig c;
        int sections = 1 + static_cast<int>(rng.next_below(4));
        for (int s = 0; s < sections; ++s) {
            ConfigSection sec;
            sec.name = "sec" + std::to_string(rng.next_below(5));
            int entries = static_cast<int>(rng.next_below(6));
            for (int e = 0; e < entries; ++e)
                sec.entries.emplace_back("key" + std::to_string(e),
                                         std::to_string(rng.next_double()));
            c.sections.push_back(sec);
        }
        CHECK(parse_config(emit_config(c)) == c);
    }

    CHECK_THROWS(parse_config("key = value\n"));
    CHECK_THROWS(parse_config("[sec\n"));
}

TEST_CASE("breakeven grid rows") {
    RunConfig cfg = parse_config(
        "[breakeven]\n"
        "p = 0.005\n"
        "n = 200\n"
        "sigma_h = 7\n"
        "delta_n = 5 15\n"
        "h_ideal = 0 5\n");
    auto rows = run_breakeven(cfg);
    REQUIRE(rows.size() == 4);
    bool found = false;
    for (const auto& r : rows) {
        if (r.h_ideal == 0.0) CHECK(std::isinf(r.m_star));
        if (r.h_ideal == 5.0 && r.delta_n == 15.0) {
            CHECK(r.m_star < 1000.0);
            found = true;
        }
    }
    CHECK(found);
    CHECK(to_csv_row(rows[0]).find("inf") != std::string::npos);
}

TEST_CASE("bench records failures per row and continues") {
    // A circuit wider than the device fails its row; the other rows survive.
    RunConfig cfg = parse_config(
        "[bench]\n"
        "route_seeds = 42\n"
        "random_trials = 1\n"
        "[sweep]\n"
        "family = j1j2\n"
        "n = 8 200\n"
        "T = 1\n");
    auto result = run_bench(cfg);
    REQUIRE(result.records.size() == 2);
    CHECK(result.records[0].error.empty());
    CHECK(!result.records[1].error.empty());
    CHECK(summarize(result.records).size() == 1);
}

TEST_CASE("bias exchange sweep crosses near p_ecr") {
    std::vector<double> pm{0.0005, 0.001, 0.002, 0.005, 0.01, 0.02, 0.05};
    auto points = bias_exchange_sweep(0.005, pm);
    REQUIRE(points.size() == pm.size());
    CHECK(points.front().advantage > 0.0);  // cheap measurements: QPD wins
    CHECK(points.back().advantage < 0.0);   // expensive measurements: QPD loses
}

// Timing comparison between the OpenMP kernels and their serial references:
// edge betweenness (parallel block reduction vs plain loop) and statevector
// gate kernels (threaded pair loop vs dense-matrix reference at small n,
// plus threaded vs single-thread at full size).

#include <chrono>
#include <cstdio>
#include <omp.h>

#include "twcut/betweenness.hpp"
#include "twcut/graph.hpp"
#include "twcut/statevector.hpp"

using namespace twcut;
using clk = std::chrono::steady_clock;

namespace {

double ms_since(clk::time_point t0) {
    return std::chrono::duration<double, std::milli>(clk::now() - t0).count();
}

void bench_betweenness() {
    std::printf("edge betweenness (Brandes)\n");
    for (int n : {200, 500, 1000}) {
        auto g = generate(GraphFamilySpec::erdos_renyi(n, 6.0 / n, 13));
        auto t0 = clk::now();
        auto serial = edge_betweenness_serial(g);
        double t_serial = ms_since(t0);
        t0 = clk::now();
        auto parallel = edge_betweenness(g);
        double t_parallel = ms_since(t0);
        double max_diff = 0.0;
        for (const auto& [e, v] : serial) {
            double d = std::abs(v - parallel.at(e));
            if (d > max_diff) max_diff = d;
        }
        std::printf("  n=%4d m=%4d  serial %8.2f ms  parallel %8.2f ms  speedup %.2fx  maxdiff %.2e\n",
                    n, g.num_edges(), t_serial, t_parallel, t_serial / t_parallel, max_diff);
    }
}

void bench_statevector() {
    std::printf("statevector kernels\n");
    for (int n : {16, 20, 22}) {
        StateVector sv(n);
        auto t0 = clk::now();
        for (int q = 0; q < n; ++q) sv.apply(Gate::h(q));
        for (int q = 0; q + 1 < n; ++q) sv.apply(Gate::cx(q, q + 1));
        double t_threaded = ms_since(t0);

        int saved = omp_get_max_threads();
        omp_set_num_threads(1);
        StateVector sv1(n);
        t0 = clk::now();
        for (int q = 0; q < n; ++q) sv1.apply(Gate::h(q));
        for (int q = 0; q + 1 < n; ++q) sv1.apply(Gate::cx(q, q + 1));
        double t_single = ms_since(t0);
        omp_set_num_threads(saved);

        double diff = 0.0;
        for (std::size_t i = 0; i < sv.dim(); ++i)
            diff = std::max(diff, std::abs(sv.amplitudes()[i] - sv1.amplitudes()[i]));
        std::printf("  n=%2d  threads=%d %8.2f ms  single %8.2f ms  speedup %.2fx  maxdiff %.2e\n",
                    n, saved, t_threaded, t_single, t_single / t_threaded, diff);
    }

    // Dense reference at small n, as a sanity cross-check of the kernels.
    const int n = 6;
    StateVector sv(n);
    std::vector<cplx> ref(std::size_t{1} << n, cplx(0));
    ref[0] = 1.0;
    for (int q = 0; q < n; ++q) {
        sv.apply(Gate::h(q));
        refsim::apply_gate_dense(ref, n, Gate::h(q));
    }
    for (int q = 0; q + 1 < n; ++q) {
        sv.apply(Gate::cx(q, q + 1));
        refsim::apply_gate_dense(ref, n, Gate::cx(q, q + 1));
    }
    double diff = 0.0;
    for (std::size_t i = 0; i < sv.dim(); ++i)
        diff = std::max(diff, std::abs(sv.amplitudes()[i] - ref[i]));
    std::printf("  dense reference cross-check (n=%d): maxdiff %.2e\n", n, diff);
}

}  // namespace

int main() {
    std::printf("threads available: %d\n", omp_get_max_threads());
    bench_betweenness();
    bench_statevector();
    return 0;
}

#include "twcut/coupling.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace twcut {

CouplingMap::CouplingMap(UGraph g) : graph_(std::move(g)) {
    const int n = graph_.num_nodes();
    dist_.assign(n, std::vector<int>(n, -1));
    for (int s = 0; s < n; ++s) {
        std::deque<int> queue{s};
        dist_[s][s] = 0;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : graph_.neighbors(v)) {
                if (dist_[s][w] < 0) {
                    dist_[s][w] = dist_[s][v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (dist_[u][v] < 0) throw std::invalid_argument("coupling map must be connected");
            diameter_ = std::max(diameter_, dist_[u][v]);
        }
}

CouplingMap heavy_hex(int d) {
    if (d < 3 || d % 2 == 0) throw std::invalid_argument("heavy_hex requires odd d >= 3");
    const int row_len = 2 * d + 1;
    const int rungs = (d + 1) / 2;

    // Row r occupies columns [first_col(r), last_col(r)].
    auto first_col = [&](int r) { return r == d - 1 ? 1 : 0; };
    auto last_col = [&](int r) { return r == 0 ? row_len - 2 : row_len - 1; };

    std::vector<std::vector<int>> row_ids(d);
    int next = 0;
    std::vector<std::vector<int>> rung_ids(d - 1);
    for (int r = 0; r < d; ++r) {
        row_ids[r].assign(row_len, -1);
        for (int c = first_col(r); c <= last_col(r); ++c) row_ids[r][c] = next++;
        if (r + 1 < d) {
            rung_ids[r].assign(rungs, -1);
            for (int k = 0; k < rungs; ++k) rung_ids[r][k] = next++;
        }
    }

    UGraph g(next);
    for (int r = 0; r < d; ++r)
        for (int c = first_col(r); c < last_col(r); ++c)
            g.add_edge(row_ids[r][c], row_ids[r][c + 1]);
    for (int r = 0; r + 1 < d; ++r) {
        // Rungs sit at columns 0,4,8,... below even rows and 2,6,10,... below
        // odd rows, so no row qubit carries rungs on both sides.
        int offset = (r % 2 == 0) ? 0 : 2;
        for (int k = 0; k < rungs; ++k) {
            int c = offset + 4 * k;
            if (c >= row_len) continue;
            int rung = rung_ids[r][k];
            if (row_ids[r][c] >= 0) g.add_edge(row_ids[r][c], rung);
            if (row_ids[r + 1][c] >= 0) g.add_edge(rung, row_ids[r + 1][c]);
        }
    }
    return CouplingMap(std::move(g));
}

CouplingMap heavy_hex_for_width(int width) {
    for (int d = 3;; d += 2) {
        int nodes = d * (2 * d + 1) - 2 + (d - 1) * ((d + 1) / 2);
        if (nodes >= width) return heavy_hex(d);
    }
}

}  // namespace twcut

#include "mbeq/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mbeq/errors.hpp"

namespace mbeq {

void Grid::validate() const {
    const std::size_t n = nodes.size();
    if (n == 0) throw ConfigError("grid: empty");
    if (weights.size() != n) throw ConfigError("grid: weights size mismatch");
    if (edges.size() != n + 1) throw ConfigError("grid: edges size mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        if (!(weights[k] > 0.0)) throw ConfigError("grid: nonpositive weight at " + std::to_string(k));
        if (!(edges[k] < edges[k + 1])) throw ConfigError("grid: edges not increasing at " + std::to_string(k));
        if (!(edges[k] <= nodes[k] && nodes[k] <= edges[k + 1]))
            throw ConfigError("grid: node outside cell at " + std::to_string(k));
        if (k > 0 && !(nodes[k - 1] < nodes[k]))
            throw ConfigError("grid: nodes not strictly increasing at " + std::to_string(k));
    }
    if (line.is_negative()) {
        if (edges.back() > 0.0) throw ConfigError("grid: positive coordinates on (-inf,0]");
    } else {
        if (edges.front() < 0.0) throw ConfigError("grid: negative coordinates on [0,inf)");
    }
}

namespace {

Grid from_edges(HalfLine hl, std::vector<double> edges, MapKind mk, double trunc) {
    Grid g;
    g.line = hl;
    g.map_kind = mk;
    g.truncation = trunc;
    g.edges = std::move(edges);
    const std::size_t n = g.edges.size() - 1;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        g.nodes[k] = 0.5 * (g.edges[k] + g.edges[k + 1]);
        g.weights[k] = g.edges[k + 1] - g.edges[k];
    }
    g.validate();
    return g;
}

} // namespace

Grid uniform_grid(HalfLine hl, double lo, double hi, std::size_t n) {
    if (!(lo < hi) || n == 0) throw ConfigError("uniform_grid: bad interval or size");
    std::vector<double> edges(n + 1);
    for (std::size_t k = 0; k <= n; ++k)
        edges[k] = lo + (hi - lo) * double(k) / double(n);
    edges.front() = lo;
    edges.back() = hi;
    return from_edges(hl, std::move(edges), MapKind::Identity, std::max(std::abs(lo), std::abs(hi)));
}

Grid compact_grid(double b, std::size_t n, double edge_ratio) {
    if (!(b > 0.0) || n < 2) throw ConfigError("compact_grid: bad parameters");
    if (!(edge_ratio > 0.0 && edge_ratio <= 1.0)) throw ConfigError("compact_grid: bad edge_ratio");
    // symmetric geometric width profile: w_k proportional to ratio^(1 - s_k),
    // s_k the normalized distance of cell k from the nearer endpoint
    const double half = 0.5 * double(n - 1);
    std::vector<double> w(n);
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double s = (half == 0.0) ? 1.0 : double(std::min(k, n - 1 - k)) / half;
        w[k] = std::pow(edge_ratio, 1.0 - s);
        total += w[k];
    }
    std::vector<double> edges(n + 1);
    edges[0] = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        edges[k + 1] = edges[k] + w[k] * (b / total);
    edges[n] = b;
    return from_edges(HalfLine{0}, std::move(edges), MapKind::Identity, b);
}

Grid log_grid(HalfLine hl, double inner, double outer, double per_decade) {
    return banded_log_grid(hl, {LogBand{inner, outer, per_decade}});
}

Grid banded_log_grid(HalfLine hl, const std::vector<LogBand>& bands) {
    if (bands.empty()) throw ConfigError("banded_log_grid: no bands");
    std::vector<double> mags; // ascending magnitudes
    mags.push_back(bands.front().lo);
    for (std::size_t b = 0; b < bands.size(); ++b) {
        const auto& band = bands[b];
        if (!(band.lo > 0.0 && band.lo < band.hi && band.per_decade > 0.0))
            throw ConfigError("banded_log_grid: bad band");
        if (std::abs(band.lo - mags.back()) > 1e-12 * band.lo)
            throw ConfigError("banded_log_grid: bands not contiguous");
        const double decades = std::log10(band.hi / band.lo);
        const std::size_t m = std::max<std::size_t>(1, std::size_t(std::ceil(decades * band.per_decade)));
        for (std::size_t k = 1; k <= m; ++k)
            mags.push_back(band.lo * std::pow(band.hi / band.lo, double(k) / double(m)));
        mags.back() = band.hi;
    }
    std::vector<double> edges;
    if (hl.is_negative()) {
        edges.assign(mags.rbegin(), mags.rend());
        for (double& e : edges) e = -e;
    } else {
        edges = std::move(mags);
    }
    return from_edges(hl, std::move(edges), MapKind::Identity, bands.back().hi);
}

Grid grid_from_nodes(HalfLine hl, MapKind mk, double truncation,
                     std::vector<double> nodes, std::vector<double> weights) {
    if (nodes.size() != weights.size() || nodes.empty())
        throw ConfigError("grid_from_nodes: size mismatch");
    Grid g;
    g.line = hl;
    g.map_kind = mk;
    g.truncation = truncation;
    g.nodes = std::move(nodes);
    g.weights = std::move(weights);
    const std::size_t n = g.nodes.size();
    g.edges.resize(n + 1);
    // anchor so the first cell is centered on its node, then accumulate
    g.edges[0] = g.nodes[0] - 0.5 * g.weights[0];
    for (std::size_t k = 0; k < n; ++k)
        g.edges[k + 1] = g.edges[k] + g.weights[k];
    // clamp float drift at the sign boundary
    if (!g.line.is_negative() && g.edges[0] < 0.0 && g.edges[0] > -1e-12 * g.weights[0]) g.edges[0] = 0.0;
    if (g.line.is_negative() && g.edges[n] > 0.0 && g.edges[n] < 1e-12 * g.weights[n - 1]) g.edges[n] = 0.0;
    // nodes may sit on reconstructed cell boundaries after drift; nudge edges
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (g.edges[k + 1] < g.nodes[k]) g.edges[k + 1] = g.nodes[k];
        if (g.edges[k + 1] > g.nodes[k + 1]) g.edges[k + 1] = g.nodes[k + 1];
    }
    g.validate();
    return g;
}

} // namespace mbeq

#pragma once

#include <cstddef>
#include <vector>

#include "mbeq/halfline.hpp"

namespace mbeq {

// Coordinate chart of a grid. Identity charts truncate the half-line at a
// finite radius; a compactified chart tags grids whose outer cell stands in
// for the rational map t -> t/(1-t) of the whole tail (diagnostics only).
enum class MapKind { Identity, Compactified };

// Cell decomposition of a segment of one half-line. Cell k is
// [edges[k], edges[k+1]], node k sits strictly inside, weights are the cell
// widths. Nodes and edges are strictly increasing, weights positive.
struct Grid {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> edges; // size() + 1 entries
    HalfLine line;
    MapKind map_kind = MapKind::Identity;
    double truncation = 0.0; // outer radius |x| the grid was built for

    std::size_t size() const { return nodes.size(); }
    double lo() const { return edges.front(); }
    double hi() const { return edges.back(); }

    // Throws ConfigError on any structural violation.
    void validate() const;
};

// n uniform cells on [lo, hi]; hl must contain the interval.
Grid uniform_grid(HalfLine hl, double lo, double hi, std::size_t n);

// n cells on [0, b] with widths shrinking geometrically toward both
// endpoints; edge cells are roughly edge_ratio times the central width.
// Resolves hard-edge and soft-edge density behavior of compact supports.
Grid compact_grid(double b, std::size_t n, double edge_ratio = 1e-4);

// Cells uniform in log|x| between magnitudes inner and outer, per_decade
// cells per decade. On the negative half-line the grid is mirrored.
Grid log_grid(HalfLine hl, double inner, double outer, double per_decade);

// Piecewise log-uniform grid: contiguous magnitude bands with individual
// resolutions. Bands must ascend and tile [bands.front().lo, bands.back().hi].
struct LogBand {
    double lo, hi;
    double per_decade;
};
Grid banded_log_grid(HalfLine hl, const std::vector<LogBand>& bands);

// Build a grid from raw nodes/weights (deserialization). Edges are
// reconstructed by accumulating weights from lo; nodes must fall inside
// their reconstructed cells.
Grid grid_from_nodes(HalfLine hl, MapKind mk, double truncation,
                     std::vector<double> nodes, std::vector<double> weights);

} // namespace mbeq

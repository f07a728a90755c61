#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "mbeq/grid.hpp"

namespace mbeq {

// Nonnegative measure carried by a grid. Density-like measures (atomic ==
// false) are interpreted as piecewise-constant densities masses[k]/weights[k]
// on their cells; atomic measures are genuine point masses at the nodes and
// their weights only set the desingularization scale of self-interactions.
struct DiscreteMeasure {
    Grid grid;
    Eigen::VectorXd masses;
    bool atomic = false;

    std::size_t size() const { return grid.size(); }
    double mass() const { return masses.sum(); }
    Eigen::VectorXd density() const;
    Eigen::VectorXd cdf() const; // cumulative masses, aligned with nodes
    void validate() const;       // sizes, nonnegativity, finite entries
};

// Unit point mass at x; scale sets the self-interaction cell width.
DiscreteMeasure dirac(double x, double scale = 1.0);

// Probability measure with constant density on the grid span.
DiscreteMeasure uniform_probability(const Grid& g);

// Measure with the given density; cell masses by 4-point Gauss-Legendre.
DiscreteMeasure from_density(const Grid& g, const std::function<double(double)>& rho);

// Image of m under x -> x^(1/q) (forward) or x -> x^q (inverse). Masses move
// with their nodes; cell edges are mapped through the same monotone map.
// Requires a measure on [0, inf).
DiscreteMeasure pushforward_power(const DiscreteMeasure& m, long q, bool forward);

// sup_x |F_a(x) - F_b(x)| between the two step CDFs.
double cdf_distance(const DiscreteMeasure& a, const DiscreteMeasure& b);

// CSV with a schema header line; node,weight,mass columns; shortest
// round-trip decimal formatting (bit-exact reload).
std::string to_csv(const DiscreteMeasure& m);
DiscreteMeasure measure_from_csv_text(const std::string& text);
void write_csv(const DiscreteMeasure& m, const std::string& path);
DiscreteMeasure read_csv(const std::string& path);

} // namespace mbeq

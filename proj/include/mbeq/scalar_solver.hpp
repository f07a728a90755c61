#pragma once

// Equilibrium measure of the scalar functional
//   E_theta(mu) = 1/2 I(mu) + 1/2 I_theta(mu) + int V dmu
// over probability measures on a truncated [0, R], and of its power-substituted
// form with kernel exponents 1/q and 1/r and field Vhat(x) = V(x^(1/q)).
// Discretized on a fixed grid the functional is a convex quadratic in the cell
// masses, handed to the simplex QP solver. First-order optimality:
//   U^mu(x) + U_theta^mu(x) + V(x) = ell on the support, >= ell elsewhere.

#include <vector>

#include "mbeq/field.hpp"
#include "mbeq/measure.hpp"
#include "mbeq/rational.hpp"
#include "mbeq/simplex_qp.hpp"

namespace mbeq {

struct SupportInterval {
    double lo = 0.0, hi = 0.0;
};

struct ScalarSolveOptions {
    double tol_gap = 1e-10;
    std::size_t max_iter = 400000;
    double weight_floor = 1e-10; // per-node support threshold, fraction of mass
    const DiscreteMeasure* warm_start = nullptr; // same grid expected
};

struct ScalarSolution {
    DiscreteMeasure measure; // mass 1
    double ell = 0.0;
    double residual_on_support = 0.0;  // max |W - ell| over active nodes
    double residual_off_support = 0.0; // min (W - ell) over inactive nodes
    std::vector<SupportInterval> support_estimate;
    double value = 0.0; // functional value at the minimizer
    Eigen::VectorXd effective_potential; // cell-averaged W per node
    std::size_t iterations = 0;
    bool converged = false;
    bool monotone = true;
    bool truncation_warning = false; // support touches the outer boundary
    bool growth_warning = false;     // field failed the growth surrogate
};

ScalarSolution solve_scalar(const Rational& theta, const ExternalField& V,
                            const Grid& grid, const ScalarSolveOptions& opts = {});

ScalarSolution solve_transformed(long q, long r, const ExternalField& Vhat,
                                 const Grid& grid, const ScalarSolveOptions& opts = {});

// Effective-potential table recomputed from the measure itself (independent
// of the solver's internal gradient): W(x_k) = U(x_k) + U_theta(x_k) + V(x_k).
struct ScalarReportRow {
    double x = 0.0;
    double weight = 0.0;
    double effective = 0.0;
    double defect = 0.0; // effective - ell
    bool active = false;
};
struct ScalarReport {
    double ell = 0.0;
    double max_on = 0.0;  // max |defect| over active rows
    double min_off = 0.0; // min defect over inactive rows (>= -tol expected)
    std::vector<ScalarReportRow> rows;
};
ScalarReport scalar_variational_report(const ScalarSolution& sol, const Rational& theta,
                                       const ExternalField& V,
                                       double weight_floor = 1e-10);

// Pushforward under x -> x^theta (forward) or its inverse, for rational theta.
DiscreteMeasure pushforward_power_rational(const DiscreteMeasure& m, const Rational& theta,
                                           bool forward);

} // namespace mbeq

#include "mbeq/scalar_solver.hpp"

#include <cmath>

#include "mbeq/errors.hpp"
#include "mbeq/kernels.hpp"

namespace mbeq {

namespace {

// cell averages of a scalar function, 4-point Gauss-Legendre per cell
Eigen::VectorXd cell_averages(const Grid& g, const std::function<double(double)>& f) {
    static const double gx[4] = {-0.8611363115940526, -0.3399810435848563,
                                 0.3399810435848563, 0.8611363115940526};
    static const double gw[4] = {0.34785484513745385, 0.6521451548625461,
                                 0.6521451548625461, 0.34785484513745385};
    Eigen::VectorXd out(Eigen::Index(g.size()));
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double a = g.edges[k], b = g.edges[k + 1];
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double s = 0.0;
        for (int i = 0; i < 4; ++i) s += gw[i] * f(mid + half * gx[i]);
        out[Eigen::Index(k)] = 0.5 * s;
    }
    return out;
}

std::vector<SupportInterval> support_runs(const DiscreteMeasure& m, double floor) {
    std::vector<SupportInterval> out;
    bool open = false;
    SupportInterval cur;
    for (std::size_t k = 0; k < m.size(); ++k) {
        const bool active = m.masses[Eigen::Index(k)] > floor;
        if (active && !open) {
            cur.lo = m.grid.edges[k];
            open = true;
        }
        if (active) cur.hi = m.grid.edges[k + 1];
        if (!active && open) {
            out.push_back(cur);
            open = false;
        }
    }
    if (open) out.push_back(cur);
    return out;
}

ScalarSolution solve_core(double alpha1, double alpha2, const ExternalField& field,
                          const Grid& grid, const ScalarSolveOptions& opts) {
    grid.validate();
    if (grid.line.is_negative())
        throw ConfigError("scalar solve: grid must live on [0,inf)");

    Eigen::MatrixXd A = power_log_kernel_self(grid, false, alpha1);
    A += power_log_kernel_self(grid, false, alpha2);
    const Eigen::VectorXd b = cell_averages(grid, field.V);

    SimplexQPOptions qopts;
    qopts.total = 1.0;
    qopts.tol_gap = opts.tol_gap;
    qopts.max_iter = opts.max_iter;
    qopts.weight_floor = opts.weight_floor;
    const Eigen::VectorXd* warm = nullptr;
    Eigen::VectorXd warm_masses;
    if (opts.warm_start && opts.warm_start->size() == grid.size()) {
        warm_masses = opts.warm_start->masses;
        warm = &warm_masses;
    }
    SimplexQPResult qp = simplex_qp(A, b, qopts, warm);

    ScalarSolution sol;
    sol.measure.grid = grid;
    sol.measure.masses = qp.m;
    sol.measure.atomic = false;
    sol.ell = qp.ell;
    sol.value = qp.value;
    sol.iterations = qp.iterations;
    sol.converged = qp.converged;
    sol.monotone = qp.monotone;
    sol.effective_potential = A * qp.m + b;
    sol.residual_on_support = qp.kkt_on;
    sol.residual_off_support = -qp.kkt_off;
    const double floor = opts.weight_floor;
    sol.support_estimate = support_runs(sol.measure, floor);
    sol.truncation_warning = qp.m[Eigen::Index(grid.size() - 1)] > floor;
    const double span = std::max(10.0, 100.0 * std::abs(grid.hi()));
    sol.growth_warning = !growth_check(field, 1.0, span).admissible;
    return sol;
}

} // namespace

ScalarSolution solve_scalar(const Rational& theta, const ExternalField& V,
                            const Grid& grid, const ScalarSolveOptions& opts) {
    if (!(theta.value() > 0.0)) throw ConfigError("solve_scalar: theta must be positive");
    return solve_core(1.0, theta.value(), V, grid, opts);
}

ScalarSolution solve_transformed(long q, long r, const ExternalField& Vhat,
                                 const Grid& grid, const ScalarSolveOptions& opts) {
    if (q < 1 || r < 1) throw ConfigError("solve_transformed: q,r must be positive");
    return solve_core(1.0 / double(q), 1.0 / double(r), Vhat, grid, opts);
}

DiscreteMeasure pushforward_power_rational(const DiscreteMeasure& m, const Rational& theta,
                                           bool forward) {
    if (!(theta.value() > 0.0))
        throw ConfigError("pushforward_power_rational: theta must be positive");
    // x -> x^(q/r) composes x -> x^(1/r) with x -> x^q.
    const long q = forward ? theta.num : theta.den;
    const long r = forward ? theta.den : theta.num;
    DiscreteMeasure step = pushforward_power(m, r, true);
    return pushforward_power(step, q, false);
}

ScalarReport scalar_variational_report(const ScalarSolution& sol, const Rational& theta,
                                       const ExternalField& V, double weight_floor) {
    const DiscreteMeasure& mu = sol.measure;
    const double th = theta.value();
    DiscreteMeasure pushed = pushforward_power_rational(mu, theta, true);

    ScalarReport rep;
    rep.rows.resize(mu.size());
    const double floor = weight_floor * mu.mass();
    double wsum = 0.0, acc = 0.0;
    for (std::size_t k = 0; k < mu.size(); ++k) {
        ScalarReportRow& row = rep.rows[k];
        row.x = mu.grid.nodes[k];
        row.weight = mu.masses[Eigen::Index(k)];
        row.active = row.weight > floor;
        const double u = log_potential(mu, row.x);
        const double ut = log_potential(pushed, std::pow(row.x, th));
        row.effective = u + ut + V(row.x);
        if (row.active) {
            wsum += row.weight;
            acc += row.weight * row.effective;
        }
    }
    rep.ell = wsum > 0.0 ? acc / wsum : 0.0;
    rep.min_off = std::numeric_limits<double>::infinity();
    bool any_off = false;
    for (auto& row : rep.rows) {
        row.defect = row.effective - rep.ell;
        if (row.active)
            rep.max_on = std::max(rep.max_on, std::abs(row.defect));
        else {
            rep.min_off = std::min(rep.min_off, row.defect);
            any_off = true;
        }
    }
    if (!any_off) rep.min_off = 0.0;
    return rep;
}

} // namespace mbeq

#include "mbeq/balayage.hpp"
#include "mbeq/errors.hpp"
#include "mbeq/kernels.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace mbeq {

namespace {

// Solve the equality-constrained projection restricted to the free cells:
//   K_FF p_F + lambda 1 = u_F,  sum p_F = total.
// Returns false when the factorization is unreliable at the given
// regularization level.
bool solve_saddle(const Eigen::MatrixXd& K, const Eigen::VectorXd& u,
                  const std::vector<int>& free, double total, double reg,
                  Eigen::VectorXd& p_out, double& lambda_out, double& residual_out) {
    const int nf = static_cast<int>(free.size());
    Eigen::MatrixXd S(nf + 1, nf + 1);
    Eigen::VectorXd rhs(nf + 1);
    for (int a = 0; a < nf; ++a) {
        for (int b = 0; b < nf; ++b) S(a, b) = K(free[a], free[b]);
        S(a, a) += reg;
        S(a, nf) = 1.0;
        S(nf, a) = 1.0;
        rhs[a] = u[free[a]];
    }
    S(nf, nf) = 0.0;
    rhs[nf] = total;

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(S);
    Eigen::VectorXd x = lu.solve(rhs);
    if (!x.allFinite()) return false;
    const double scale = std::max(rhs.cwiseAbs().maxCoeff(), 1.0);
    residual_out = (S * x - rhs).cwiseAbs().maxCoeff() / scale;
    p_out = x.head(nf);
    lambda_out = x[nf];
    return true;
}

} // namespace

BalayageResult balayage_halfline_full(const DiscreteMeasure& sigma, HalfLine target,
                                      const Grid& grid, const BalayageOptions& opts) {
    sigma.validate();
    grid.validate();
    if (grid.line != target)
        throw ConfigError("balayage: output grid lies on the wrong half-line");

    BalayageResult out;
    if (sigma.grid.line == target) {
        // A measure already supported on the target half-line is its own
        // swept measure; no projection is performed.
        out.measure = sigma;
        return out;
    }

    const int n = static_cast<int>(grid.size());
    const double total = sigma.mass();

    // Exact cell-averaged potential of sigma over each target cell.
    Eigen::VectorXd u = log_kernel(grid, false, sigma.grid, sigma.atomic) * sigma.masses;
    Eigen::MatrixXd K = log_kernel_self(grid, false);

    std::vector<char> active(static_cast<size_t>(n), 0);
    Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
    double lambda = 0.0;
    double reg = opts.regularization;
    const double mass_floor = -1e-12 * std::max(total, 1.0);

    for (out.active_rounds = 1; out.active_rounds <= opts.max_active_rounds; ++out.active_rounds) {
        std::vector<int> free;
        free.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            if (!active[static_cast<size_t>(i)]) free.push_back(i);
        if (free.empty()) throw NumericalError("balayage: active set exhausted every cell");

        Eigen::VectorXd pf;
        double residual = 0.0;
        bool ok = solve_saddle(K, u, free, total, reg, pf, lambda, residual);
        while ((!ok || residual > opts.residual_tol) && reg < 1e-4) {
            // The truncated kernel can be borderline singular; a tiny ridge
            // restores a usable factorization at the cost of a flagged
            // perturbation.
            reg = (reg == 0.0) ? 1e-12 * K.cwiseAbs().maxCoeff() : reg * 100.0;
            out.regularized = true;
            ok = solve_saddle(K, u, free, total, reg, pf, lambda, residual);
        }
        if (!ok) throw NumericalError("balayage: saddle solve failed");
        out.residual = residual;

        p.setZero();
        for (size_t a = 0; a < free.size(); ++a) p[free[a]] = pf[static_cast<long>(a)];

        // Pin the most negative cells, release pinned cells whose
        // multiplier asks for mass back, stop when feasible and optimal.
        int worst = -1;
        double worst_val = mass_floor;
        for (int i : free)
            if (p[i] < worst_val) { worst_val = p[i]; worst = i; }
        if (worst >= 0) {
            for (int i : free)
                if (p[i] < mass_floor && (p[i] < 0.25 * worst_val || i == worst))
                    active[static_cast<size_t>(i)] = 1;
            continue;
        }

        Eigen::VectorXd g = K * p - u;
        int release = -1;
        double release_val = -1e-10 * std::max(1.0, u.cwiseAbs().maxCoeff());
        for (int i = 0; i < n; ++i) {
            if (!active[static_cast<size_t>(i)]) continue;
            const double mult = g[i] + lambda;
            if (mult < release_val) { release_val = mult; release = i; }
        }
        if (release < 0) break;
        active[static_cast<size_t>(release)] = 0;
    }

    for (int i = 0; i < n; ++i) p[i] = std::max(p[i], 0.0);

    out.measure.grid = grid;
    out.measure.atomic = false;
    out.measure.masses = p;
    out.shift = lambda;
    out.measure.validate();
    return out;
}

DiscreteMeasure balayage_halfline(const DiscreteMeasure& sigma, HalfLine target,
                                  const Grid& grid) {
    return balayage_halfline_full(sigma, target, grid).measure;
}

} // namespace mbeq

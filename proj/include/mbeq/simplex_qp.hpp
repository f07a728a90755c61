#pragma once

// Quadratic minimization over the scaled probability simplex
//   min 1/2 m^T A m + b^T m   s.t.  m >= 0, sum m = total,
// for A symmetric and positive definite on the zero-sum subspace (true of
// the discrete energy kernels). Hybrid first-order method: cheap pairwise
// conditional-gradient steps with exact line search (which also produce
// exact coordinate drops, so supports come out clean) interleaved with
// periodic projected-gradient steps. The conditional-gradient duality gap
//   gap = g.m - total * min_i g_i  >=  value - optimum
// certifies optimality of the returned point.

#include <Eigen/Dense>
#include <cstddef>

namespace mbeq {

struct SimplexQPOptions {
    double total = 1.0;
    double tol_gap = 1e-10;    // converged when gap <= tol_gap * max(1, |value|)
    std::size_t max_iter = 400000;
    std::size_t pg_every = 8;  // projected-gradient step cadence
    double weight_floor = 1e-10; // support threshold, fraction of total
};

struct SimplexQPResult {
    Eigen::VectorXd m;
    double value = 0.0;
    double gap = 0.0;
    double ell = 0.0;    // mass-weighted mean gradient over the support
    double kkt_on = 0.0; // max |g - ell| over support nodes
    double kkt_off = 0.0;// max (ell - g)_+ over the rest
    std::size_t iterations = 0;
    bool converged = false;
    bool monotone = true; // no accepted step increased the objective
};

SimplexQPResult simplex_qp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                           const SimplexQPOptions& opts,
                           const Eigen::VectorXd* warm_start = nullptr);

// Euclidean projection onto {m >= 0, sum m = total}.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v, double total);

} // namespace mbeq

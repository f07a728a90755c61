#include "mbeq/simplex_qp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mbeq/errors.hpp"

namespace mbeq {

Eigen::VectorXd project_simplex(const Eigen::VectorXd& v, double total) {
    if (!(total > 0.0)) throw ConfigError("project_simplex: total must be positive");
    std::vector<double> u(v.data(), v.data() + v.size());
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cumsum = 0.0, tau = u[0] - total;
    for (std::size_t k = 0; k < u.size(); ++k) {
        cumsum += u[k];
        const double t = (cumsum - total) / double(k + 1);
        if (u[k] - t > 0.0) tau = t;
    }
    Eigen::VectorXd out = (v.array() - tau).cwiseMax(0.0);
    // renormalize the roundoff drift of the threshold rule
    const double s = out.sum();
    if (s > 0.0) out *= total / s;
    return out;
}

SimplexQPResult simplex_qp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                           const SimplexQPOptions& opts,
                           const Eigen::VectorXd* warm_start) {
    const Eigen::Index n = b.size();
    if (A.rows() != n || A.cols() != n) throw ConfigError("simplex_qp: size mismatch");
    if (n == 0) throw ConfigError("simplex_qp: empty problem");

    SimplexQPResult res;
    Eigen::VectorXd m;
    if (warm_start && warm_start->size() == n)
        m = project_simplex(*warm_start, opts.total);
    else
        m = Eigen::VectorXd::Constant(n, opts.total / double(n));

    Eigen::VectorXd Am = A * m;
    double value = 0.5 * m.dot(Am) + b.dot(m);

    // gradient-step length for the projected steps, from a cheap norm bound
    const double row_norm = A.cwiseAbs().rowwise().sum().maxCoeff();
    const double eta = 1.0 / std::max(row_norm, 1e-30);

    Eigen::VectorXd g(n), d(n), Ad(n);
    std::size_t it = 0;
    for (; it < opts.max_iter; ++it) {
        g = Am + b;
        Eigen::Index ibest = 0;
        const double gmin = g.minCoeff(&ibest);
        const double gap = m.dot(g) - opts.total * gmin;
        res.gap = gap;
        if (gap <= opts.tol_gap * std::max(1.0, std::abs(value))) {
            res.converged = true;
            break;
        }

        if ((it + 1) % opts.pg_every == 0) {
            // projected-gradient direction, exact line search on the quadratic
            d = project_simplex(m - eta * g, opts.total) - m;
            const double gd = g.dot(d);
            if (gd < 0.0) {
                Ad.noalias() = A * d;
                const double dAd = d.dot(Ad);
                const double t = dAd > 0.0 ? std::min(1.0, -gd / dAd) : 1.0;
                const double dv = t * gd + 0.5 * t * t * dAd;
                if (dv <= 0.0) {
                    m += t * d;
                    Am += t * Ad;
                    value += dv;
                } else {
                    res.monotone = res.monotone && dv <= 1e-14 * std::max(1.0, std::abs(value));
                }
            }
        } else {
            // pairwise step: shift mass from the worst carrying node to the
            // best node; hitting the cap zeroes the donor exactly
            Eigen::Index iworst = -1;
            double gmax = -std::numeric_limits<double>::infinity();
            for (Eigen::Index k = 0; k < n; ++k)
                if (m[k] > 0.0 && g[k] > gmax) { gmax = g[k]; iworst = k; }
            if (iworst < 0 || iworst == ibest) continue;
            const double gd = gmin - gmax;
            if (gd >= 0.0) continue;
            const double dAd = A(ibest, ibest) - 2.0 * A(ibest, iworst) + A(iworst, iworst);
            const double tcap = m[iworst];
            const double t = dAd > 0.0 ? std::min(tcap, -gd / dAd) : tcap;
            const double dv = t * gd + 0.5 * t * t * dAd;
            if (dv > 0.0) continue;
            m[ibest] += t;
            m[iworst] = (t == tcap) ? 0.0 : m[iworst] - t;
            Am.noalias() += t * (A.col(ibest) - A.col(iworst));
            value += dv;
        }

        if ((it + 1) % 1024 == 0) { // kill incremental drift
            Am.noalias() = A * m;
            value = 0.5 * m.dot(Am) + b.dot(m);
        }
    }

    Am.noalias() = A * m;
    value = 0.5 * m.dot(Am) + b.dot(m);
    g = Am + b;
    res.m = m;
    res.value = value;
    res.iterations = it;

    const double floor = opts.weight_floor * opts.total;
    double wsum = 0.0, gw = 0.0;
    for (Eigen::Index k = 0; k < n; ++k)
        if (m[k] > floor) { wsum += m[k]; gw += m[k] * g[k]; }
    res.ell = wsum > 0.0 ? gw / wsum : g.minCoeff();
    for (Eigen::Index k = 0; k < n; ++k) {
        if (m[k] > floor)
            res.kkt_on = std::max(res.kkt_on, std::abs(g[k] - res.ell));
        else
            res.kkt_off = std::max(res.kkt_off, res.ell - g[k]);
    }
    return res;
}

} // namespace mbeq

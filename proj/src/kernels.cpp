#include "mbeq/kernels.hpp"

#include <cmath>

#include "mbeq/errors.hpp"

namespace mbeq {

namespace {

constexpr double kFarFactor = 30.0; // separation factor switching to series

// g'(t) = -log|t| + 1; building block of the exact pair integral
inline double g_pair(double t) {
    if (t == 0.0) return 0.0;
    return 0.25 * t * t * (3.0 - 2.0 * std::log(std::abs(t)));
}

// F'(y) = -log|x-y|; building block of the exact cell potential
inline double f_pot(double xy) {
    if (xy == 0.0) return 0.0;
    return xy * (std::log(std::abs(xy)) - 1.0);
}

} // namespace

double log_int_cell(double x, double a, double b) {
    const double w = b - a;
    const double d = x - 0.5 * (a + b);
    if (std::abs(d) > kFarFactor * w) {
        const double r2 = (w * w) / (d * d);
        return w * (-std::log(std::abs(d)) + r2 * (1.0 / 24.0 + r2 / 320.0));
    }
    return f_pot(x - b) - f_pot(x - a);
}

double log_int_cell_c(std::complex<double> z, double a, double b) {
    if (z.imag() == 0.0) return log_int_cell(z.real(), a, b);
    const double w = b - a;
    const std::complex<double> d = z - 0.5 * (a + b);
    if (std::abs(d) > kFarFactor * w) {
        const std::complex<double> r2 = (w * w) / (d * d);
        return w * std::real(-std::log(d) + r2 * (1.0 / 24.0 + r2 / 320.0));
    }
    const std::complex<double> ta = z - a, tb = z - b;
    return std::real(tb * (std::log(tb) - 1.0) - ta * (std::log(ta) - 1.0));
}

double log_pair_cell(double a, double b, double c, double d) {
    const double w1 = b - a, w2 = d - c;
    const double D = 0.5 * (a + b) - 0.5 * (c + d);
    if (std::abs(D) > kFarFactor * (w1 + w2)) {
        const double D2 = D * D;
        const double s2 = (w1 * w1 + w2 * w2) / (24.0 * D2);
        const double s4 = ((w1 * w1 * w1 * w1 + w2 * w2 * w2 * w2) / 320.0 +
                           (w1 * w1) * (w2 * w2) / 96.0) / (D2 * D2);
        return w1 * w2 * (-std::log(std::abs(D)) + s2 + s4);
    }
    if (std::min(w1, w2) <= 1e-6 * std::max(w1, w2)) {
        // Nearby cells of extreme width disparity: the four-term
        // antiderivative combination loses ~wmax/wmin digits, so integrate
        // the thin cell by quadrature against the exact fat-cell integral.
        static const double gx[8] = {-0.9602898564975363, -0.7966664774136267,
                                     -0.5255324099163290, -0.1834346424956498,
                                     0.1834346424956498,  0.5255324099163290,
                                     0.7966664774136267,  0.9602898564975363};
        static const double gw[8] = {0.1012285362903763, 0.2223810344533745,
                                     0.3137066458778873, 0.3626837833783620,
                                     0.3626837833783620, 0.3137066458778873,
                                     0.2223810344533745, 0.1012285362903763};
        double tl = a, th = b, fl = c, fh = d;
        if (w1 > w2) { tl = c; th = d; fl = a; fh = b; }
        const double mid = 0.5 * (tl + th), half = 0.5 * (th - tl);
        double acc = 0.0;
        for (int q = 0; q < 8; ++q)
            acc += 0.5 * gw[q] * log_int_cell(mid + half * gx[q], fl, fh);
        return (th - tl) * acc;
    }
    return g_pair(b - c) + g_pair(a - d) - g_pair(a - c) - g_pair(b - d);
}

double log1psq_int_cell(double a, double b) {
    auto A = [](double y) { return y * std::log1p(y * y) - 2.0 * y + 2.0 * std::atan(y); };
    return A(b) - A(a);
}

double log_potential(const DiscreteMeasure& m, double x, bool* hit_node) {
    if (hit_node) *hit_node = false;
    const auto& g = m.grid;
    double acc = 0.0;
    if (m.atomic) {
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double mk = m.masses[Eigen::Index(k)];
            if (mk == 0.0) continue;
            const double dx = x - g.nodes[k];
            if (dx == 0.0) {
                acc += mk * (1.5 - std::log(g.weights[k]));
                if (hit_node) *hit_node = true;
            } else {
                acc -= mk * std::log(std::abs(dx));
            }
        }
        return acc;
    }
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double mk = m.masses[Eigen::Index(k)];
        if (mk == 0.0) continue;
        acc += mk / g.weights[k] * log_int_cell(x, g.edges[k], g.edges[k + 1]);
    }
    return acc;
}

double log_potential_c(const DiscreteMeasure& m, std::complex<double> z) {
    if (z.imag() == 0.0) return log_potential(m, z.real());
    const auto& g = m.grid;
    double acc = 0.0;
    if (m.atomic) {
        for (std::size_t k = 0; k < g.size(); ++k)
            acc -= m.masses[Eigen::Index(k)] * std::log(std::abs(z - g.nodes[k]));
        return acc;
    }
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double mk = m.masses[Eigen::Index(k)];
        if (mk == 0.0) continue;
        acc += mk / g.weights[k] * log_int_cell_c(z, g.edges[k], g.edges[k + 1]);
    }
    return acc;
}

double spherical_potential(const DiscreteMeasure& m, double x) {
    const auto& g = m.grid;
    double acc = log_potential(m, x) + 0.5 * m.mass() * std::log1p(x * x);
    if (m.atomic) {
        for (std::size_t k = 0; k < g.size(); ++k)
            acc += 0.5 * m.masses[Eigen::Index(k)] * std::log1p(g.nodes[k] * g.nodes[k]);
        return acc;
    }
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double mk = m.masses[Eigen::Index(k)];
        if (mk == 0.0) continue;
        acc += 0.5 * mk / g.weights[k] * log1psq_int_cell(g.edges[k], g.edges[k + 1]);
    }
    return acc;
}

std::complex<double> cauchy_transform(const DiscreteMeasure& m, std::complex<double> z) {
    const auto& g = m.grid;
    std::complex<double> acc = 0.0;
    if (m.atomic) {
        for (std::size_t k = 0; k < g.size(); ++k)
            acc += m.masses[Eigen::Index(k)] / (z - g.nodes[k]);
        return acc;
    }
    // Per-cell linear density reconstruction, anchored at cell midpoints so
    // cell masses are preserved. The slope term turns the on-support
    // principal value from first order (rho' h from the self cell) into
    // second order.
    const std::size_t n = g.size();
    auto dens = [&](std::size_t k) { return m.masses[Eigen::Index(k)] / g.weights[k]; };
    auto mid = [&](std::size_t k) { return 0.5 * (g.edges[k] + g.edges[k + 1]); };
    for (std::size_t k = 0; k < n; ++k) {
        const double a = g.edges[k], b = g.edges[k + 1];
        const double c = mid(k);
        // The slope correction only matters within a few widths of z; for
        // far cells its two terms cancel catastrophically while contributing
        // O(slope w^3 / dist^2), so it is dropped there.
        double slope = 0.0;
        if (n > 1 && std::abs(z - c) <= 10.0 * g.weights[k]) {
            const std::size_t lo = (k == 0) ? 0 : k - 1;
            const std::size_t hi = (k + 1 == n) ? k : k + 1;
            slope = (dens(hi) - dens(lo)) / (mid(hi) - mid(lo));
        }
        if (m.masses[Eigen::Index(k)] == 0.0 && slope == 0.0) continue;
        // int (rho + slope (y-c)) / (z-y) dy over the cell. For real z inside
        // the cell the principal value is taken and the jump contributes
        // -i pi rho (boundary value from above), spelled out explicitly
        // instead of relying on signed zeros in the complex division.
        std::complex<double> L;
        if (z.imag() == 0.0 && z.real() > a && z.real() < b) {
            L = {std::log((z.real() - a) / (b - z.real())), -kPi};
        } else {
            L = std::log((z - a) / (z - b));
        }
        acc += (dens(k) + slope * (z - c)) * L - slope * g.weights[k];
    }
    return acc;
}

namespace {

// one kernel entry between "cells" (or atoms) of two grids, mass coordinates
inline double log_entry(const Grid& gx, bool ax, std::size_t i,
                        const Grid& gy, bool ay, std::size_t k) {
    if (ax && ay) {
        const double dx = gx.nodes[i] - gy.nodes[k];
        if (dx == 0.0) return 1.5 - 0.5 * std::log(gx.weights[i] * gy.weights[k]);
        return -std::log(std::abs(dx));
    }
    if (ax) return log_int_cell(gx.nodes[i], gy.edges[k], gy.edges[k + 1]) / gy.weights[k];
    if (ay) return log_int_cell(gy.nodes[k], gx.edges[i], gx.edges[i + 1]) / gx.weights[i];
    return log_pair_cell(gx.edges[i], gx.edges[i + 1], gy.edges[k], gy.edges[k + 1]) /
           (gx.weights[i] * gy.weights[k]);
}

Eigen::VectorXd sph_addon(const Grid& g, bool atomic) {
    Eigen::VectorXd phi(Eigen::Index(g.size()));
    for (std::size_t k = 0; k < g.size(); ++k)
        phi[Eigen::Index(k)] = atomic
            ? std::log1p(g.nodes[k] * g.nodes[k])
            : log1psq_int_cell(g.edges[k], g.edges[k + 1]) / g.weights[k];
    return phi;
}

Grid power_image(const Grid& g, double alpha) {
    if (g.line.is_negative() || g.lo() < 0.0)
        throw ConfigError("power kernel: grid must live on [0,inf)");
    Grid im = g;
    for (auto& e : im.edges) e = std::pow(e, alpha);
    for (std::size_t k = 0; k < g.size(); ++k) {
        im.nodes[k] = std::pow(g.nodes[k], alpha);
        im.weights[k] = im.edges[k + 1] - im.edges[k];
    }
    im.truncation = std::pow(g.truncation, alpha);
    return im;
}

} // namespace

Eigen::MatrixXd log_kernel(const Grid& gx, bool ax, const Grid& gy, bool ay) {
    Eigen::MatrixXd K(Eigen::Index(gx.size()), Eigen::Index(gy.size()));
    for (std::size_t i = 0; i < gx.size(); ++i)
        for (std::size_t k = 0; k < gy.size(); ++k)
            K(Eigen::Index(i), Eigen::Index(k)) = log_entry(gx, ax, i, gy, ay, k);
    return K;
}

Eigen::MatrixXd log_kernel_self(const Grid& g, bool atomic) {
    const Eigen::Index n = Eigen::Index(g.size());
    Eigen::MatrixXd K(n, n);
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t k = i; k < g.size(); ++k) {
            const double v = log_entry(g, atomic, i, g, atomic, k);
            K(Eigen::Index(i), Eigen::Index(k)) = v;
            K(Eigen::Index(k), Eigen::Index(i)) = v;
        }
    }
    return K;
}

Eigen::MatrixXd power_log_kernel(const Grid& gx, bool ax, const Grid& gy, bool ay, double alpha) {
    return log_kernel(power_image(gx, alpha), ax, power_image(gy, alpha), ay);
}

Eigen::MatrixXd power_log_kernel_self(const Grid& g, bool atomic, double alpha) {
    return log_kernel_self(power_image(g, alpha), atomic);
}

Eigen::MatrixXd spherical_kernel(const Grid& gx, bool ax, const Grid& gy, bool ay) {
    Eigen::MatrixXd K = log_kernel(gx, ax, gy, ay);
    const Eigen::VectorXd px = sph_addon(gx, ax), py = sph_addon(gy, ay);
    K.colwise() += 0.5 * px;
    K.rowwise() += 0.5 * py.transpose();
    return K;
}

Eigen::MatrixXd spherical_kernel_self(const Grid& g, bool atomic) {
    Eigen::MatrixXd K = log_kernel_self(g, atomic);
    const Eigen::VectorXd p = sph_addon(g, atomic);
    K.colwise() += 0.5 * p;
    K.rowwise() += 0.5 * p.transpose();
    return K;
}

Eigen::MatrixXd potential_matrix(const Grid& eval, const Grid& src, bool atomic_src) {
    Eigen::MatrixXd P(Eigen::Index(eval.size()), Eigen::Index(src.size()));
    for (std::size_t i = 0; i < eval.size(); ++i) {
        const double x = eval.nodes[i];
        for (std::size_t k = 0; k < src.size(); ++k) {
            double v;
            if (atomic_src) {
                const double dx = x - src.nodes[k];
                v = (dx == 0.0) ? 1.5 - std::log(src.weights[k]) : -std::log(std::abs(dx));
            } else {
                v = log_int_cell(x, src.edges[k], src.edges[k + 1]) / src.weights[k];
            }
            P(Eigen::Index(i), Eigen::Index(k)) = v;
        }
    }
    return P;
}

Eigen::MatrixXd spherical_potential_matrix(const Grid& eval, const Grid& src, bool atomic_src) {
    Eigen::MatrixXd P = potential_matrix(eval, src, atomic_src);
    const Eigen::VectorXd ps = sph_addon(src, atomic_src);
    P.rowwise() += 0.5 * ps.transpose();
    for (std::size_t i = 0; i < eval.size(); ++i)
        P.row(Eigen::Index(i)).array() += 0.5 * std::log1p(eval.nodes[i] * eval.nodes[i]);
    return P;
}

namespace {

double energy_with(const DiscreteMeasure& a, const DiscreteMeasure& b,
                   const Grid& ga, const Grid& gb) {
    const bool same = &a == &b;
    double acc = 0.0;
    for (std::size_t i = 0; i < ga.size(); ++i) {
        const double mi = a.masses[Eigen::Index(i)];
        if (mi == 0.0) continue;
        for (std::size_t k = same ? i : 0; k < gb.size(); ++k) {
            const double mk = b.masses[Eigen::Index(k)];
            if (mk == 0.0) continue;
            double v = log_entry(ga, a.atomic, i, gb, b.atomic, k);
            if (same && k > i) v *= 2.0;
            acc += mi * mk * v;
        }
    }
    return acc;
}

} // namespace

double mutual_energy(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    return energy_with(a, b, a.grid, b.grid);
}

double mutual_energy_power(const DiscreteMeasure& a, const DiscreteMeasure& b, double alpha) {
    const Grid ia = power_image(a.grid, alpha);
    if (&a == &b) {
        DiscreteMeasure ta = a;
        ta.grid = ia;
        return energy_with(ta, ta, ia, ia);
    }
    const Grid ib = power_image(b.grid, alpha);
    return energy_with(a, b, ia, ib);
}

double spherical_energy(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    double acc = mutual_energy(a, b);
    const Eigen::VectorXd pa = sph_addon(a.grid, a.atomic), pb = sph_addon(b.grid, b.atomic);
    acc += 0.5 * b.mass() * pa.dot(a.masses);
    acc += 0.5 * a.mass() * pb.dot(b.masses);
    return acc;
}

} // namespace mbeq

#include "mbeq/analytic_oracle.hpp"
#include "mbeq/errors.hpp"
#include "mbeq/kernels.hpp"

#include <cmath>
#include <numbers>

namespace mbeq {

namespace {

constexpr double kPi = std::numbers::pi;

std::complex<double> int_pow(std::complex<double> w, int p) {
    std::complex<double> out{1.0, 0.0};
    for (int i = 0; i < p; ++i) out *= w;
    return out;
}

// Upper-side argument of the branch root on the real axis. Sheets are glued
// crosswise, which makes the root of unity alternate with the sheet parity;
// this closed form reproduces the gluing for every r (checked in the tests
// by the crosswise boundary identity).
double upper_arg_on_cut(int sheet, int r, bool negative_axis) {
    const int t = sheet / 2;
    const double base = negative_axis ? kPi / r : 0.0;
    const double twist = 2.0 * kPi * t / r;
    return (sheet % 2 == 1) ? base + twist : base - twist;
}

} // namespace

SheetedPsi make_sheeted_psi(int r, double a) {
    if (r < 1) throw ConfigError("sheeted function: r must be at least 1");
    if (!(a > 0.0) || !std::isfinite(a))
        throw ConfigError("sheeted function: point mass location must be positive and finite");
    return SheetedPsi{r, a};
}

std::complex<double> SheetedPsi::branch_root(int sheet, std::complex<double> z, int side) const {
    if (sheet < 1 || sheet > r) throw ConfigError("sheeted function: sheet index out of range");
    const bool upper = (z.imag() > 0.0) || (z.imag() == 0.0 && side >= 0);
    const int t = sheet / 2;
    const int k = (sheet % 2 == 1) ? (upper ? t : -t) : (upper ? -t : t);

    std::complex<double> principal;
    if (z.imag() == 0.0) {
        const double x = z.real();
        if (x >= 0.0) {
            principal = {std::pow(x, 1.0 / r), 0.0};
        } else {
            const double m = std::pow(-x, 1.0 / r);
            const double phi = (upper ? kPi : -kPi) / r;
            principal = std::polar(m, phi);
        }
    } else {
        principal = std::exp(std::log(z) / double(r));
    }
    return principal * std::polar(1.0, 2.0 * kPi * k / r);
}

std::complex<double> SheetedPsi::eval(int sheet, std::complex<double> z, int side) const {
    if (z == std::complex<double>(0.0, 0.0))
        throw NumericalError("sheeted function: z = 0 is singular on every sheet");
    if (sheet == 1 && z == std::complex<double>(a, 0.0))
        throw NumericalError("sheeted function: z = a is the simple pole of sheet 1");
    const std::complex<double> w = branch_root(sheet, z, side);
    const double b = std::pow(a, 1.0 / r);
    return 1.0 / (double(r) * int_pow(w, r - 1) * (w - b));
}

HalfLine SheetedPsi::cut_line(int j) const { return HalfLine::for_index(j); }

double SheetedPsi::density(int j, double s) const {
    if (j < 1 || j > r - 1) throw ConfigError("sheeted function: component index out of range");
    if (s == 0.0 || !cut_line(j).contains(s))
        throw ConfigError("sheeted function: density point off the component's half-line");

    // Polar form of the jump: with w = m e^(i phi) the exact upper boundary
    // root, w^r = s exactly, so
    //   Psi = 1 / (r (s - b w^(r-1)))  and  density = Im Psi / pi.
    // Evaluating through the closed angle keeps the density accurate out to
    // truncation radii where |Im Psi| << |Psi|.
    const double b = std::pow(a, 1.0 / r);
    const double m = std::pow(std::abs(s), 1.0 / r);
    const double phi = upper_arg_on_cut(j, r, s < 0.0);
    const double mpow = std::pow(m, r - 1);
    const double ang = (r - 1) * phi;
    const double re = s - b * mpow * std::cos(ang);
    const double im = -b * mpow * std::sin(ang);
    const double d2 = double(r) * double(r) * (re * re + im * im);
    return double(r) * b * mpow * std::sin(ang) / (kPi * d2);
}

const DiscreteMeasure& OracleFamily::component(int j) const {
    if (j < 1 || j > int(components.size()))
        throw ConfigError("oracle family: component index out of range");
    return components[size_t(j - 1)];
}

std::vector<Grid> oracle_default_grids(int r, double a, double tail_tol, double per_decade) {
    if (r < 1) throw ConfigError("oracle grids: r must be at least 1");
    if (!(a > 0.0)) throw ConfigError("oracle grids: scale must be positive");
    if (!(tail_tol > 0.0) || tail_tol >= 1e-2)
        throw ConfigError("oracle grids: tail tolerance out of range");

    std::vector<Grid> grids;
    grids.reserve(size_t(std::max(0, r - 1)));
    const double mid = std::max(12.0, per_decade / 2.0);
    const double coarse = std::clamp(per_decade / 4.0, 12.0, 48.0);
    for (int j = 1; j <= r - 1; ++j) {
        // Tail mass beyond R is (a^(1/r)/pi) sin(pi j/r) R^(-1/r); head mass
        // below eps is at most (eps/a)^(1/r)/pi. Both bounded by tail_tol.
        // Resolution concentrates in the band around |s| = a carrying the
        // bulk of the mass and grades down through shoulder bands, keeping
        // the piecewise-constant potential error of the tails subdominant.
        const double sj = std::sin(kPi * j / r);
        const double outer = a * std::max(1e5, std::pow(sj / (kPi * tail_tol), double(r)));
        const double inner = a * std::min(1e-5, std::pow(kPi * tail_tol, double(r)));
        grids.push_back(banded_log_grid(HalfLine::for_index(j),
                                        {LogBand{inner, a * 1e-4, coarse},
                                         LogBand{a * 1e-4, a * 1e-3, mid},
                                         LogBand{a * 1e-3, a * 1e3, per_decade},
                                         LogBand{a * 1e3, a * 1e4, mid},
                                         LogBand{a * 1e4, outer, coarse}}));
    }
    return grids;
}

OracleFamily point_mass_family(int r, double a, const std::vector<Grid>& grids) {
    SheetedPsi psi = make_sheeted_psi(r, a);
    if (int(grids.size()) != r - 1)
        throw ConfigError("oracle family: need exactly r-1 component grids");

    OracleFamily fam;
    fam.r = r;
    fam.components.reserve(grids.size());
    for (int j = 1; j <= r - 1; ++j) {
        const Grid& g = grids[size_t(j - 1)];
        if (g.line != psi.cut_line(j))
            throw ConfigError("oracle family: component grid on the wrong half-line");
        fam.components.push_back(
            from_density(g, [&psi, j](double s) { return psi.density(j, s); }));
    }
    return fam;
}

OracleFamily superpose(const DiscreteMeasure& mu, int r, const std::vector<Grid>& grids) {
    mu.validate();
    if (mu.grid.line.is_negative())
        throw ConfigError("superpose: generating measure must live on [0, inf)");
    if (int(grids.size()) != r - 1)
        throw ConfigError("superpose: need exactly r-1 component grids");

    // Quadrature representation of mu: atoms directly, cells by 4-point
    // Gauss-Legendre against the piecewise-constant density.
    static const double gl_x[4] = {-0.8611363115940526, -0.3399810435848563,
                                   0.3399810435848563, 0.8611363115940526};
    static const double gl_w[4] = {0.3478548451374538, 0.6521451548625461,
                                   0.6521451548625461, 0.3478548451374538};
    std::vector<SheetedPsi> psis;
    std::vector<double> wts;
    const double tiny = 1e-300;
    for (size_t i = 0; i < mu.size(); ++i) {
        if (mu.masses[long(i)] <= tiny) continue;
        if (mu.atomic) {
            if (!(mu.grid.nodes[i] > 0.0))
                throw ConfigError("superpose: support must stay away from 0");
            psis.push_back(make_sheeted_psi(r, mu.grid.nodes[i]));
            wts.push_back(mu.masses[long(i)]);
        } else {
            const double lo = mu.grid.edges[i], hi = mu.grid.edges[i + 1];
            if (!(lo > 0.0))
                throw ConfigError("superpose: support must stay away from 0");
            const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
            for (int gq = 0; gq < 4; ++gq) {
                psis.push_back(make_sheeted_psi(r, mid + half * gl_x[gq]));
                wts.push_back(mu.masses[long(i)] * 0.5 * gl_w[gq]);
            }
        }
    }
    if (psis.empty()) throw ConfigError("superpose: generating measure has no mass");

    OracleFamily fam;
    fam.r = r;
    fam.components.reserve(grids.size());
    for (int j = 1; j <= r - 1; ++j) {
        const Grid& g = grids[size_t(j - 1)];
        if (g.line != HalfLine::for_index(j))
            throw ConfigError("superpose: component grid on the wrong half-line");
        fam.components.push_back(from_density(g, [&, j](double s) {
            double acc = 0.0;
            for (size_t i = 0; i < psis.size(); ++i) acc += wts[i] * psis[i].density(j, s);
            return acc;
        }));
    }
    return fam;
}

double u_first_closed_form(int r, double a, std::complex<double> z) {
    if (r < 1) throw ConfigError("closed-form potential: r must be at least 1");
    if (!(a > 0.0)) throw ConfigError("closed-form potential: scale must be positive");
    if (r == 1) return 0.0;
    const double invr = 1.0 / r;
    if (std::abs(z - std::complex<double>(a, 0.0)) < 3e-8 * a)
        return -std::log(double(r)) + (invr - 1.0) * std::log(a);
    const std::complex<double> num = std::pow(z, invr) - std::pow(std::complex<double>(a, 0.0), invr);
    return std::log(std::abs(num / (z - a)));
}

double EnergyIdentityReport::defect() const {
    const double d1 = std::abs(lhs - rhs_quadrature);
    const double d2 = std::abs(lhs - rhs_closed_form);
    const double d3 = std::abs(rhs_quadrature - rhs_closed_form);
    return std::max({d1, d2, d3});
}

EnergyIdentityReport energy_identity_check(const OracleFamily& fam, double a) {
    if (fam.r < 2 || fam.components.size() + 1 != size_t(fam.r))
        throw ConfigError("energy identity: family is incomplete");
    EnergyIdentityReport rep;
    for (int j = 1; j <= fam.r - 1; ++j) {
        rep.lhs += mutual_energy(fam.component(j), fam.component(j));
        if (j <= fam.r - 2) rep.lhs -= mutual_energy(fam.component(j), fam.component(j + 1));
    }
    rep.rhs_quadrature = 0.5 * log_potential(fam.component(1), a);
    rep.rhs_closed_form = 0.5 * u_first_closed_form(fam.r, a, {a, 0.0});
    return rep;
}

} // namespace mbeq

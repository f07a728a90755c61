#include "doctest.h"

#include "mbeq/analytic_oracle.hpp"
#include "mbeq/balayage.hpp"
#include "mbeq/errors.hpp"
#include "mbeq/kernels.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace mbeq;
using std::complex;

namespace {
constexpr double kPi = std::numbers::pi;
const HalfLine kPos{0};
const HalfLine kNeg{1};

complex<double> cpow_int(complex<double> w, int p) {
    complex<double> out{1.0, 0.0};
    for (int i = 0; i < p; ++i) out *= w;
    return out;
}
}

TEST_CASE("balayage of a point mass onto the other half-line") {
    const double a = 1.0;
    DiscreteMeasure delta = dirac(a);
    Grid g = banded_log_grid(kNeg, {LogBand{1e-13, 1e13, 16.0}});
    BalayageResult res = balayage_halfline_full(delta, kNeg, g);

    // Total mass is preserved by construction of the projection.
    CHECK(std::abs(res.measure.mass() - 1.0) < 1e-10);
    CHECK(res.residual < 1e-8);
    CHECK(std::abs(res.shift) < 1e-4);

    // Closed form of the swept density: sqrt(a) / (pi sqrt|x| (|x| + a)).
    auto exact = [&](double x) { return std::sqrt(a) / (kPi * std::sqrt(-x) * (-x + a)); };
    Eigen::VectorXd dens = res.measure.density();
    for (size_t i = 0; i < g.size(); ++i) {
        const double x = g.nodes[i];
        if (-x < 1e-6 || -x > 1e6) continue;
        CHECK(dens[long(i)] == doctest::Approx(exact(x)).epsilon(5e-3));
    }
    // Frozen value at x = -1: 1/(2 pi).
    size_t k = 0;
    while (k + 1 < g.size() && std::abs(g.nodes[k] + 1.0) > std::abs(g.nodes[k + 1] + 1.0)) ++k;
    CHECK(dens[long(k)] == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(5e-3));

    // The potentials agree on the target half-line.
    for (double x : {-1e-3, -0.1, -1.0, -7.0, -1e3}) {
        CHECK(log_potential(res.measure, x) ==
              doctest::Approx(log_potential(delta, x)).epsilon(1e-5));
    }
}

TEST_CASE("balayage bookkeeping: idempotence, mass, input checks") {
    Grid gneg = banded_log_grid(kNeg, {LogBand{1e-10, 1e10, 12.0}});
    Grid gpos = uniform_grid(kPos, 1.0, 2.0, 60);
    DiscreteMeasure sigma = uniform_probability(gpos);
    sigma.masses *= 2.0; // non-unit mass

    DiscreteMeasure swept = balayage_halfline(sigma, kNeg, gneg);
    CHECK(std::abs(swept.mass() - 2.0) < 1e-10);
    for (double x : {-0.5, -3.0}) {
        CHECK(log_potential(swept, x) == doctest::Approx(log_potential(sigma, x)).epsilon(1e-5));
    }

    // Sweeping a measure already on the target returns it unchanged.
    DiscreteMeasure again = balayage_halfline(swept, kNeg, gneg);
    REQUIRE(again.size() == swept.size());
    for (size_t i = 0; i < swept.size(); ++i) CHECK(again.masses[long(i)] == swept.masses[long(i)]);

    // Output grid must live on the requested half-line.
    CHECK_THROWS_AS((void)balayage_halfline(sigma, kNeg, gpos), ConfigError);
}

TEST_CASE("sheeted branch values: frozen point, residue, decay") {
    SheetedPsi psi2 = make_sheeted_psi(2, 1.0);
    // Frozen: r=2, a=1, z=4 gives 1/(2 * 2 * (2-1)) = 1/4.
    CHECK(psi2.eval(1, {4.0, 0.0}).real() == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(psi2.eval(1, {4.0, 0.0}).imag() == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

    // Simple pole at z = a with residue 1 (Richardson in the step kills the
    // linear error term).
    SheetedPsi psi3 = make_sheeted_psi(3, 2.0);
    auto res_at = [&](double h) {
        complex<double> z{2.0 + h, 0.0};
        return ((z - complex<double>(2.0, 0.0)) * psi3.eval(1, z)).real();
    };
    const double rich = 2.0 * res_at(0.5e-4) - res_at(1e-4);
    CHECK(rich == doctest::Approx(1.0).epsilon(1e-8));

    // Psi_1(z) - 1/(rz) decays like |z|^(-1-1/r): fit the exponent.
    auto err = [&](double z) {
        return std::abs(psi3.eval(1, {z, 0.0}) - complex<double>(1.0 / (3.0 * z), 0.0));
    };
    const double p_est = std::log(err(1e4) / err(1e8)) / std::log(1e4);
    CHECK(p_est == doctest::Approx(1.0 + 1.0 / 3.0).epsilon(0.02));

    CHECK_THROWS_AS((void)psi3.eval(1, {0.0, 0.0}), NumericalError);
    CHECK_THROWS_AS((void)psi3.eval(1, {2.0, 0.0}), NumericalError);
    CHECK_THROWS_AS((void)psi3.eval(4, {1.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(make_sheeted_psi(2, -1.0), ConfigError);
}

TEST_CASE("sheeted branch values: root accounting and symmetry") {
    const int r = 5;
    const double a = 1.3;
    SheetedPsi psi = make_sheeted_psi(r, a);
    const complex<double> z{2.0, 3.0};

    // The r branch roots are distinct r-th roots of z.
    std::vector<complex<double>> roots;
    for (int j = 1; j <= r; ++j) {
        complex<double> w = psi.branch_root(j, z);
        CHECK(std::abs(cpow_int(w, r) - z) < 1e-12);
        for (const auto& seen : roots) CHECK(std::abs(w - seen) > 1e-8);
        roots.push_back(w);
    }

    // Telescoping: the sheet values sum to the Cauchy kernel at the mass.
    complex<double> total{0.0, 0.0};
    complex<double> prod{1.0, 0.0};
    for (int j = 1; j <= r; ++j) {
        total += psi.eval(j, z);
        prod *= psi.eval(j, z);
    }
    CHECK(std::abs(total - 1.0 / (z - a)) < 1e-12);
    // Product over sheets: 1 / (r^r z^(r-1) (z - a)).
    complex<double> prod_exact = 1.0 / (std::pow(5.0, 5) * cpow_int(z, r - 1) * (z - a));
    CHECK(std::abs(prod - prod_exact) < 1e-12 * std::abs(prod_exact) + 1e-18);

    // Real coefficients: conjugation symmetry on every sheet.
    for (int j = 1; j <= r; ++j) {
        CHECK(std::abs(psi.eval(j, std::conj(z)) - std::conj(psi.eval(j, z))) < 1e-15);
    }
}

TEST_CASE("sheeted branch values: gluing and cuts") {
    const int r = 4;
    SheetedPsi psi = make_sheeted_psi(r, 1.0);

    // Crosswise gluing: the upper value on sheet j matches the lower value
    // on sheet j+1 across the shared cut.
    for (int j = 1; j <= r - 1; ++j) {
        const double s = psi.cut_line(j).is_negative() ? -2.3 : 3.7;
        const complex<double> up = psi.eval(j, {s, 0.0}, +1);
        const complex<double> dn = psi.eval(j + 1, {s, 0.0}, -1);
        CHECK(std::abs(up - dn) < 1e-14 * std::abs(up));
        // And symmetrically the other way.
        const complex<double> up2 = psi.eval(j + 1, {s, 0.0}, +1);
        const complex<double> dn2 = psi.eval(j, {s, 0.0}, -1);
        CHECK(std::abs(up2 - dn2) < 1e-14 * std::abs(up2));
    }

    // Sheet 1 is continuous across (0, inf): both sides agree.
    CHECK(std::abs(psi.eval(1, {2.0, 0.0}, +1) - psi.eval(1, {2.0, 0.0}, -1)) == 0.0);
    // Sheet r (r even) is continuous across (0, inf) as well.
    CHECK(std::abs(psi.eval(r, {2.0, 0.0}, +1) - psi.eval(r, {2.0, 0.0}, -1)) == 0.0);
    // Middle sheets are cut along the whole line: sides genuinely differ.
    CHECK(std::abs(psi.eval(2, {2.0, 0.0}, +1) - psi.eval(2, {2.0, 0.0}, -1)) > 1e-6);
}

TEST_CASE("point-mass family: densities, masses, tails") {
    SheetedPsi psi = make_sheeted_psi(2, 1.0);
    // Frozen: density of the first component at s = -1 is 1/(4 pi).
    CHECK(psi.density(1, -1.0) == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-14));
    CHECK_THROWS_AS((void)psi.density(1, +1.0), ConfigError);
    CHECK_THROWS_AS((void)psi.density(2, -1.0), ConfigError);

    const int r = 3;
    const double a = 1.0;
    auto grids = oracle_default_grids(r, a);
    REQUIRE(grids.size() == 2);
    CHECK(grids[0].line.is_negative());
    CHECK(!grids[1].line.is_negative());

    OracleFamily fam = point_mass_family(r, a, grids);
    CHECK(fam.expected_mass(1) == Rational(2, 3));
    CHECK(fam.component(1).mass() == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
    CHECK(fam.component(2).mass() == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
    CHECK_THROWS_AS((void)fam.component(3), ConfigError);

    // Densities are strictly positive across the whole grid.
    for (int j = 1; j <= 2; ++j)
        for (size_t i = 0; i < fam.component(j).size(); ++i)
            CHECK(fam.component(j).masses[long(i)] > 0.0);

    // Tail law: density ~ (a^(1/r)/(pi r)) sin(pi j / r) |s|^(-1-1/r).
    SheetedPsi psi3 = make_sheeted_psi(r, a);
    for (int j = 1; j <= 2; ++j) {
        const double s = psi3.cut_line(j).is_negative() ? -1e8 : 1e8;
        const double cj = std::pow(a, 1.0 / r) / (kPi * r) * std::sin(kPi * j / r);
        const double law = cj * std::pow(std::abs(s), -1.0 - 1.0 / r);
        CHECK(psi3.density(j, s) == doctest::Approx(law).epsilon(1e-2));
    }

    // Variational chain: 2 U^(mu_j) = U^(mu_j-1) + U^(mu_j+1) on the j-th
    // cut, with mu_0 the point mass and mu_r = 0.
    DiscreteMeasure delta = dirac(a);
    for (double s : {-4.0, -0.8, -0.02}) {
        const double lhs = 2.0 * log_potential(fam.component(1), s);
        const double rhs = log_potential(delta, s) + log_potential(fam.component(2), s);
        CHECK(lhs == doctest::Approx(rhs).epsilon(2e-5));
    }
    for (double s : {0.03, 0.9, 5.0}) {
        const double lhs = 2.0 * log_potential(fam.component(2), s);
        const double rhs = log_potential(fam.component(1), s);
        CHECK(lhs == doctest::Approx(rhs).epsilon(2e-5));
    }

    // Boundary relation of the Cauchy transforms on the first cut:
    // F_1+ + F_1- = F_0 + F_2 with F_0(z) = 1/(z - a).
    for (double s : {-2.5, -0.6}) {
        const double lhs = 2.0 * cauchy_transform(fam.component(1), {s, 0.0}).real();
        const double rhs = 1.0 / (s - a) + cauchy_transform(fam.component(2), {s, 0.0}).real();
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-5));
    }

    // Far-field normalization of the potential: U ~ mass * log(1/|x|).
    const double far = -1e15;
    CHECK(log_potential(fam.component(1), far) ==
          doctest::Approx(-(2.0 / 3.0) * std::log(std::abs(far))).epsilon(1e-4));
}

TEST_CASE("point-mass family: Cauchy transform and closed-form potential") {
    const int r = 2;
    const double a = 1.0;
    OracleFamily fam = point_mass_family(r, a, oracle_default_grids(r, a));

    // Frozen: F_1(4) = 1/(4-1) - Psi_1(4) = 1/3 - 1/4.
    complex<double> f1 = cauchy_transform(fam.component(1), {4.0, 0.0});
    CHECK(f1.real() == doctest::Approx(1.0 / 3.0 - 0.25).epsilon(1e-5));
    CHECK(std::abs(f1.imag()) < 1e-12);

    // Closed-form potential log|(z^(1/r)-a^(1/r))/(z-a)| against quadrature.
    CHECK(u_first_closed_form(2, 1.0, {4.0, 0.0}) == doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-12));
    CHECK(log_potential(fam.component(1), 4.0) ==
          doctest::Approx(u_first_closed_form(2, 1.0, {4.0, 0.0})).epsilon(1e-5));
    CHECK(u_first_closed_form(1, 1.0, {4.0, 0.0}) == 0.0);
    // Limit value at z = a.
    CHECK(u_first_closed_form(2, 4.0, {4.0, 0.0}) ==
          doctest::Approx(std::log(0.5 * std::pow(4.0, -0.5))).epsilon(1e-10));

    // On-support evaluation for r=3, a=2: the closed form holds on the cut.
    OracleFamily fam3 = point_mass_family(3, 2.0, oracle_default_grids(3, 2.0, 1e-7, 32.0));
    CHECK(log_potential(fam3.component(1), -5.0) ==
          doctest::Approx(u_first_closed_form(3, 2.0, {-5.0, 0.0})).epsilon(1e-5));
}

TEST_CASE("point-mass family: half-the-balayage cross-check") {
    const double a = 1.0;
    auto grids = oracle_default_grids(2, a);
    OracleFamily fam = point_mass_family(2, a, grids);
    DiscreteMeasure swept = balayage_halfline(dirac(a), HalfLine{1}, grids[0]);

    // For r=2 the single component is exactly half the swept point mass.
    double worst = 0.0;
    Eigen::VectorXd dfam = fam.component(1).density();
    Eigen::VectorXd dbal = swept.density();
    for (size_t i = 0; i < grids[0].size(); ++i) {
        const double s = grids[0].nodes[i];
        if (-s < 1e-6 || -s > 1e6) continue;
        const double diff = std::abs(0.5 * dbal[long(i)] - dfam[long(i)]);
        worst = std::max(worst, diff / (1e-6 + dfam[long(i)]));
    }
    CHECK(worst < 1e-3);
    CHECK(cdf_distance(swept, fam.component(1)) ==
          doctest::Approx(0.5).epsilon(1e-6)); // masses 1 vs 1/2, shapes align
}

TEST_CASE("energy identity of the family") {
    for (auto [r, a] : {std::pair<int, double>{2, 1.0}, {3, 2.5}}) {
        OracleFamily fam = point_mass_family(r, a, oracle_default_grids(r, a));
        EnergyIdentityReport rep = energy_identity_check(fam, a);
        CHECK(rep.rhs_closed_form ==
              doctest::Approx(0.5 * (std::log(1.0 / r) + (1.0 / r - 1.0) * std::log(a))).epsilon(1e-14));
        CHECK(rep.defect() < 1e-4);
    }
}

TEST_CASE("superposed family: reductions and identities") {
    const int r = 2;
    auto grids = oracle_default_grids(r, 1.7);

    // A unit point mass reduces superposition to the point-mass family.
    OracleFamily direct = point_mass_family(r, 1.7, grids);
    OracleFamily mixed = superpose(dirac(1.7), r, grids);
    for (size_t i = 0; i < grids[0].size(); ++i)
        CHECK(mixed.component(1).masses[long(i)] == direct.component(1).masses[long(i)]);

    // Uniform mixture on [1,2]: mass halves, potentials balance, and the
    // mixture energy matches the kernel identity
    //   I(mu, mu_1) = I(mu) - I_(1/r)(mu).
    DiscreteMeasure mu = uniform_probability(uniform_grid(kPos, 1.0, 2.0, 80));
    OracleFamily fam = superpose(mu, r, grids);
    CHECK(fam.component(1).mass() == doctest::Approx(0.5).epsilon(1e-6));

    for (double s : {-0.7, -3.0}) {
        CHECK(2.0 * log_potential(fam.component(1), s) ==
              doctest::Approx(log_potential(mu, s)).epsilon(2e-5));
    }

    const double cross = mutual_energy(mu, fam.component(1));
    const double ident = mutual_energy(mu, mu) - mutual_energy_power(mu, mu, 0.5);
    CHECK(cross == doctest::Approx(ident).epsilon(1e-6));

    // Mixture potential = mixture of closed-form potentials.
    double uquad = 0.0;
    {
        static const double gx[4] = {-0.8611363115940526, -0.3399810435848563,
                                     0.3399810435848563, 0.8611363115940526};
        static const double gw[4] = {0.3478548451374538, 0.6521451548625461,
                                     0.6521451548625461, 0.3478548451374538};
        for (size_t i = 0; i < mu.size(); ++i) {
            const double lo = mu.grid.edges[i], hi = mu.grid.edges[i + 1];
            for (int q = 0; q < 4; ++q) {
                const double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gx[q];
                uquad += mu.masses[long(i)] * 0.5 * gw[q] * u_first_closed_form(r, x, {4.0, 0.0});
            }
        }
    }
    CHECK(log_potential(fam.component(1), 4.0) == doctest::Approx(uquad).epsilon(1e-5));

    // Support touching zero or on the wrong side is rejected.
    DiscreteMeasure bad = uniform_probability(uniform_grid(kPos, 0.0, 1.0, 10));
    CHECK_THROWS_AS((void)superpose(bad, r, grids), ConfigError);
    DiscreteMeasure neg = uniform_probability(uniform_grid(kNeg, -2.0, -1.0, 10));
    CHECK_THROWS_AS((void)superpose(neg, r, grids), ConfigError);
}

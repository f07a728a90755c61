#pragma once

// Closed-form reference solutions built from an algebraic function on an
// r-sheeted cover of the plane. For a unit point mass at a > 0 under the
// r-chain interaction, every auxiliary component measure has an explicit
// density: the jump of Psi_j across its cut, where
//   Psi(w) = 1 / (r w^(r-1) (w - a^(1/r))),  z = w^r,
// and Psi_j is Psi composed with the j-th branch of w = z^(1/r). These
// measures serve as ground truth for the iterative solvers: masses, tail
// exponents, potentials, and an exact energy identity all have closed forms.

#include <complex>
#include <vector>

#include "mbeq/measure.hpp"
#include "mbeq/rational.hpp"

namespace mbeq {

// Branch bookkeeping for Psi_j. Sheets are numbered 1..r; sheet 1 carries the
// pole at z = a, sheet j is glued crosswise to sheet j+1 across the half-line
// of sign (-1)^j. side selects the boundary value on a cut (+1 from above,
// -1 from below); off the cuts both sides agree.
struct SheetedPsi {
    int r = 2;
    double a = 1.0;

    // j-th branch of z^(1/r): principal root times a sheet- and
    // side-dependent root of unity.
    std::complex<double> branch_root(int sheet, std::complex<double> z, int side = +1) const;
    std::complex<double> eval(int sheet, std::complex<double> z, int side = +1) const;
    // Half-line carrying the cut shared by sheets j and j+1, j = 1..r-1.
    HalfLine cut_line(int j) const;
    // Density of component j at s inside its cut: jump of Psi_j / (2 pi i).
    double density(int j, double s) const;
};

SheetedPsi make_sheeted_psi(int r, double a);

// Components j = 1..r-1 of a closed-form family. component(j) has mass
// 1 - j/r and lives on the half-line of sign (-1)^j.
struct OracleFamily {
    int r = 0;
    std::vector<DiscreteMeasure> components;

    const DiscreteMeasure& component(int j) const;
    Rational expected_mass(int j) const { return {r - j, r}; }
};

// Grids sized so that the mass lost to truncation (inner and outer) stays
// below tail_tol for every component. per_decade sets the resolution of the
// central band [a/1000, 1000a] carrying the bulk of the mass; the tails get
// a quarter of it (clamped to [12, 24]).
std::vector<Grid> oracle_default_grids(int r, double a, double tail_tol = 1e-7,
                                       double per_decade = 64.0);

// Family generated by a unit point mass at a > 0.
OracleFamily point_mass_family(int r, double a, const std::vector<Grid>& grids);

// Same family averaged over a probability measure mu on (0, inf):
// component j is the mu-mixture of the point-mass components. Support of mu
// must stay away from 0.
OracleFamily superpose(const DiscreteMeasure& mu, int r, const std::vector<Grid>& grids);

// log | (z^(1/r) - a^(1/r)) / (z - a) |, the closed form of the first
// component's logarithmic potential; finite at z = a, zero for r = 1.
double u_first_closed_form(int r, double a, std::complex<double> z);

// Interaction energy of the family against itself,
//   sum_j I(mu_j, mu_j) - sum_j I(mu_j, mu_j+1),
// which must equal  1/2 U^(mu_1)(a)  =  1/2 log( (1/r) a^(1/r - 1) ).
struct EnergyIdentityReport {
    double lhs = 0.0;            // quadrature of the double sums
    double rhs_quadrature = 0.0; // 1/2 potential of component 1 at a
    double rhs_closed_form = 0.0;
    double defect() const;       // worst pairwise discrepancy
};
EnergyIdentityReport energy_identity_check(const OracleFamily& fam, double a);

} // namespace mbeq

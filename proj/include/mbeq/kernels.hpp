#pragma once

#include <Eigen/Dense>
#include <complex>

#include "mbeq/measure.hpp"

namespace mbeq {

// Exact integrals of the logarithmic kernel -log|.| over grid cells. The
// closed antiderivative forms are swapped for series expansions once the
// evaluation point or cell pair is well separated, to dodge cancellation.
double log_int_cell(double x, double a, double b);               // int_a^b -log|x-y| dy
double log_int_cell_c(std::complex<double> z, double a, double b);
double log_pair_cell(double a, double b, double c, double d);    // iint -log|x-y|
double log1psq_int_cell(double a, double b);                     // int_a^b log(1+y^2) dy

// U(z) = int -log|z-y| dm(y). Density-like measures integrate the kernel
// exactly against their piecewise-constant density; atomic measures use the
// plain node sum with an exact node hit desingularized to the uniform-cell
// self value -log(w)+3/2 (hit_node reports when that rule fired).
double log_potential(const DiscreteMeasure& m, double x, bool* hit_node = nullptr);
double log_potential_c(const DiscreteMeasure& m, std::complex<double> z);
// kernel log( sqrt(1+x^2) sqrt(1+y^2) / |x-y| )
double spherical_potential(const DiscreteMeasure& m, double x);
// int dm(y)/(z-y); for real z inside the support this returns the boundary
// value from below, PV + i pi rho(z)
std::complex<double> cauchy_transform(const DiscreteMeasure& m, std::complex<double> z);

// Kernel matrices in mass coordinates: m^T K n ~ iint -log|x-y| dm dn for
// measures m on rows(gx) and n on cols(gy). The self versions desingularize
// the diagonal; with ax/ay the corresponding side is treated as atomic.
Eigen::MatrixXd log_kernel(const Grid& gx, bool ax, const Grid& gy, bool ay);
Eigen::MatrixXd log_kernel_self(const Grid& g, bool atomic);
// kernel -log|x^alpha - y^alpha| through the image cells of t -> t^alpha;
// grids must live on [0,inf)
Eigen::MatrixXd power_log_kernel(const Grid& gx, bool ax, const Grid& gy, bool ay, double alpha);
Eigen::MatrixXd power_log_kernel_self(const Grid& g, bool atomic, double alpha);
Eigen::MatrixXd spherical_kernel(const Grid& gx, bool ax, const Grid& gy, bool ay);
Eigen::MatrixXd spherical_kernel_self(const Grid& g, bool atomic);

// (i,k) = potential at eval.nodes[i] from unit mass in cell k of src.
Eigen::MatrixXd potential_matrix(const Grid& eval, const Grid& src, bool atomic_src);
Eigen::MatrixXd spherical_potential_matrix(const Grid& eval, const Grid& src, bool atomic_src);

// I(a,b) = iint -log|x-y| da db and friends.
double mutual_energy(const DiscreteMeasure& a, const DiscreteMeasure& b);
double mutual_energy_power(const DiscreteMeasure& a, const DiscreteMeasure& b, double alpha);
double spherical_energy(const DiscreteMeasure& a, const DiscreteMeasure& b);

} // namespace mbeq

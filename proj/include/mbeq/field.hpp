#pragma once

#include <functional>
#include <string>
#include <vector>

namespace mbeq {

// External field V acting on [0,inf). Carries an optional derivative for
// spectral-curve work and a printable name for manifests.
struct ExternalField {
    std::function<double(double)> V;
    std::function<double(double)> dV; // may be empty
    std::string name = "custom";

    double operator()(double x) const { return V(x); }
    bool has_derivative() const { return static_cast<bool>(dV); }
};

ExternalField linear_field(double c = 1.0);            // V(x) = c x
ExternalField monomial_field(double c, double p);      // V(x) = c x^p, p >= 1
// piecewise-linear interpolation through (x, v) samples, linear extrapolation
ExternalField tabulated_field(std::vector<double> xs, std::vector<double> vs);
// V_hat(x) = V(x^(1/q)), the field of the transformed problem
ExternalField transformed_field(const ExternalField& V, long q);

// Testable surrogate of the admissibility growth requirement
// lim_{x->inf} V(x) - log(1+x^2) = +inf: checks that the difference
// increases along geometric samples of [lo, hi] and reports the total climb.
// Admissible when the returned margin is positive and every step is.
struct GrowthCheck {
    bool admissible;
    double margin;      // total increase of V(x) - log(1+x^2) over the tail
    double worst_step;  // most negative single-step increment
};
GrowthCheck growth_check(const ExternalField& V, double lo = 1.0, double hi = 1e8,
                         std::size_t samples = 64);

} // namespace mbeq

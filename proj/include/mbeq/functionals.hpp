#pragma once

// Energy functionals.  The scalar functional for parameter theta acts on one
// probability measure on [0,inf):
//   E_theta(mu) = 1/2 I(mu) + 1/2 I_theta(mu) + int V dmu,
// where I is the logarithmic energy and I_theta uses the kernel
// log 1/|x^theta - y^theta|.  Substituting x -> x^q gives the transformed
// functional with kernels log 1/|x^(1/q) - y^(1/q)| and log 1/|x^(1/r) - y^(1/r)|
// and field Vhat(x) = V(x^(1/q)).  The equivalent chain functional is
//   E(nu) = sum_ij c_ij I(nu_i, nu_j) + int Vhat dnu_0,
// finite only for compact supports; its spherical variant replaces the log
// kernel by log 1/|x-y| + 1/2 log(1+x^2) + 1/2 log(1+y^2) and subtracts the
// induced field correction s_i log(1+x^2) (s_i the weighted row sums), which
// keeps every term finite on unbounded supports and leaves the value equal
// to the log form whenever both converge.

#include <vector>

#include "mbeq/field.hpp"
#include "mbeq/interaction.hpp"
#include "mbeq/measure.hpp"
#include "mbeq/rational.hpp"

namespace mbeq {

struct FunctionalValue {
    double energy = 0.0;   // kernel part
    double external = 0.0; // field part
    double total = 0.0;
};

FunctionalValue scalar_functional(const DiscreteMeasure& mu, const Rational& theta,
                                  const ExternalField& V);

FunctionalValue transformed_functional(const DiscreteMeasure& mu, long q, long r,
                                       const ExternalField& Vhat);

// nu holds the components ordered jmin..jmax (see NikishinSystem::slot).
FunctionalValue vector_functional(const NikishinSystem& sys,
                                  const std::vector<DiscreteMeasure>& nu,
                                  const ExternalField& Vhat);

// Returns +infinity if any component has a negative mass entry (infeasible
// point sentinel for direct minimization).
FunctionalValue spherical_vector_functional(const NikishinSystem& sys,
                                            const std::vector<DiscreteMeasure>& nu,
                                            const ExternalField& Vhat);

} // namespace mbeq

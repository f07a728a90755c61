#include "mbeq/functionals.hpp"

#include <cmath>
#include <limits>

#include "mbeq/errors.hpp"
#include "mbeq/kernels.hpp"

namespace mbeq {

namespace {

double external_part(const DiscreteMeasure& m, const ExternalField& V) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < m.masses.size(); ++i)
        s += V(m.grid.nodes[std::size_t(i)]) * m.masses[i];
    return s;
}

double log1psq_moment(const DiscreteMeasure& m) {
    // int log(1+x^2) dm, cell-exact for density measures.
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m.masses[Eigen::Index(i)] == 0.0) continue;
        if (m.atomic) {
            const double x = m.grid.nodes[i];
            s += std::log1p(x * x) * m.masses[Eigen::Index(i)];
        } else {
            const double a = m.grid.edges[i], b = m.grid.edges[i + 1];
            s += log1psq_int_cell(a, b) / (b - a) * m.masses[Eigen::Index(i)];
        }
    }
    return s;
}

} // namespace

FunctionalValue scalar_functional(const DiscreteMeasure& mu, const Rational& theta,
                                  const ExternalField& V) {
    if (mu.grid.line.is_negative())
        throw NumericalError("scalar_functional: measure must live on [0,inf)");
    FunctionalValue out;
    const double ilog = mutual_energy(mu, mu);
    const double itheta = mutual_energy_power(mu, mu, theta.value());
    out.energy = 0.5 * ilog + 0.5 * itheta;
    out.external = external_part(mu, V);
    out.total = out.energy + out.external;
    return out;
}

FunctionalValue transformed_functional(const DiscreteMeasure& mu, long q, long r,
                                       const ExternalField& Vhat) {
    if (mu.grid.line.is_negative())
        throw NumericalError("transformed_functional: measure must live on [0,inf)");
    if (q < 1 || r < 1) throw ConfigError("transformed_functional: q,r must be positive");
    FunctionalValue out;
    const double iq = mutual_energy_power(mu, mu, 1.0 / double(q));
    const double ir = mutual_energy_power(mu, mu, 1.0 / double(r));
    out.energy = 0.5 * iq + 0.5 * ir;
    out.external = external_part(mu, Vhat);
    out.total = out.energy + out.external;
    return out;
}

FunctionalValue vector_functional(const NikishinSystem& sys,
                                  const std::vector<DiscreteMeasure>& nu,
                                  const ExternalField& Vhat) {
    if (nu.size() != std::size_t(sys.size()))
        throw NumericalError("vector_functional: component count mismatch");
    FunctionalValue out;
    for (long i = sys.jmin; i <= sys.jmax; ++i) {
        out.energy += mutual_energy(nu[sys.slot(i)], nu[sys.slot(i)]);
        if (i < sys.jmax)
            out.energy -= mutual_energy(nu[sys.slot(i)], nu[sys.slot(i + 1)]);
    }
    out.external = external_part(nu[sys.slot(0)], Vhat);
    out.total = out.energy + out.external;
    return out;
}

FunctionalValue spherical_vector_functional(const NikishinSystem& sys,
                                            const std::vector<DiscreteMeasure>& nu,
                                            const ExternalField& Vhat) {
    if (nu.size() != std::size_t(sys.size()))
        throw NumericalError("spherical_vector_functional: component count mismatch");
    FunctionalValue out;
    for (const auto& m : nu)
        if ((m.masses.array() < 0.0).any()) {
            out.total = std::numeric_limits<double>::infinity();
            out.energy = out.total;
            return out;
        }
    for (long i = sys.jmin; i <= sys.jmax; ++i) {
        out.energy += spherical_energy(nu[sys.slot(i)], nu[sys.slot(i)]);
        if (i < sys.jmax)
            out.energy -= spherical_energy(nu[sys.slot(i)], nu[sys.slot(i + 1)]);
        out.external -= sys.weighted_row_sum(i).value() * log1psq_moment(nu[sys.slot(i)]);
    }
    out.external += external_part(nu[sys.slot(0)], Vhat);
    out.total = out.energy + out.external;
    return out;
}

} // namespace mbeq

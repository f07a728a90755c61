#include "mbeq/field.hpp"

#include <algorithm>
#include <cmath>

#include "mbeq/errors.hpp"

namespace mbeq {

ExternalField linear_field(double c) {
    ExternalField f;
    f.V = [c](double x) { return c * x; };
    f.dV = [c](double) { return c; };
    f.name = "linear(" + std::to_string(c) + ")";
    return f;
}

ExternalField monomial_field(double c, double p) {
    if (!(p >= 1.0)) throw ConfigError("monomial_field: exponent must be >= 1");
    ExternalField f;
    f.V = [c, p](double x) { return c * std::pow(x, p); };
    f.dV = [c, p](double x) { return c * p * std::pow(x, p - 1.0); };
    f.name = "monomial(" + std::to_string(c) + ",x^" + std::to_string(p) + ")";
    return f;
}

ExternalField tabulated_field(std::vector<double> xs, std::vector<double> vs) {
    if (xs.size() != vs.size() || xs.size() < 2)
        throw ConfigError("tabulated_field: need at least two samples");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw ConfigError("tabulated_field: x not increasing");
    auto eval = [xs = std::move(xs), vs = std::move(vs)](double x) {
        std::size_t hi = std::size_t(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
        if (hi == 0) hi = 1;
        if (hi == xs.size()) hi = xs.size() - 1;
        const std::size_t lo = hi - 1;
        const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
        return vs[lo] + t * (vs[hi] - vs[lo]);
    };
    ExternalField f;
    f.V = eval;
    f.name = "tabulated";
    return f;
}

ExternalField transformed_field(const ExternalField& V, long q) {
    if (q < 1) throw ConfigError("transformed_field: q must be >= 1");
    if (q == 1) return V;
    ExternalField f;
    const double invq = 1.0 / double(q);
    f.V = [inner = V.V, invq](double x) { return inner(std::pow(x, invq)); };
    if (V.dV)
        f.dV = [inner = V.dV, invq](double x) {
            return inner(std::pow(x, invq)) * invq * std::pow(x, invq - 1.0);
        };
    f.name = V.name + " o x^(1/" + std::to_string(q) + ")";
    return f;
}

GrowthCheck growth_check(const ExternalField& V, double lo, double hi, std::size_t samples) {
    if (!(lo > 0.0 && hi > lo) || samples < 2) throw ConfigError("growth_check: bad range");
    std::vector<double> c(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double x = lo * std::pow(hi / lo, double(k) / double(samples - 1));
        c[k] = V(x) - std::log1p(x * x);
    }
    // The difference may dip before its eventual climb (e.g. sqrt growth);
    // only the behavior past the global minimum matters.
    const std::size_t kmin = std::size_t(std::min_element(c.begin(), c.end()) - c.begin());
    double worst = 0.0;
    for (std::size_t k = kmin + 1; k < samples; ++k) worst = std::min(worst, c[k] - c[k - 1]);
    GrowthCheck out;
    out.margin = c.back() - c[kmin];
    out.worst_step = worst;
    const double scale = 1e-12 * std::max(1.0, std::abs(c.back()));
    out.admissible = kmin + 1 < samples && out.margin > 0.0 && worst >= -scale;
    return out;
}

} // namespace mbeq

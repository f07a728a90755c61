#include "mbeq/interaction.hpp"

#include <cmath>
#include <numeric>

#include "mbeq/errors.hpp"

namespace mbeq {

std::size_t NikishinSystem::slot(long j) const {
    if (!valid_index(j)) throw NumericalError("NikishinSystem: index out of range");
    return std::size_t(j - jmin);
}

HalfLine NikishinSystem::line(long j) const {
    if (!valid_index(j)) throw NumericalError("NikishinSystem: index out of range");
    return HalfLine::for_index(j);
}

Rational NikishinSystem::mass(long j) const {
    if (!valid_index(j)) return Rational(0);
    if (j >= 0) return Rational(r - j, r);
    return Rational(q + j, q); // 1 - |j|/q with j < 0
}

Rational NikishinSystem::interaction(long i, long j) const {
    if (!valid_index(i) || !valid_index(j))
        throw NumericalError("NikishinSystem: index out of range");
    if (i == j) return Rational(1);
    if (i == j + 1 || i + 1 == j) return Rational(-1, 2);
    return Rational(0);
}

Rational NikishinSystem::weighted_row_sum(long j) const {
    if (!valid_index(j)) throw NumericalError("NikishinSystem: index out of range");
    Rational s = mass(j);
    // Neighbour masses outside jmin..jmax are zero by mass().
    s = s - Rational(1, 2) * mass(j - 1) - Rational(1, 2) * mass(j + 1);
    return s;
}

double NikishinSystem::decay_exponent(long j) const {
    if (!valid_index(j)) throw NumericalError("NikishinSystem: index out of range");
    if (j == 0) return 0.0;
    if (j > 0) return -1.0 - 1.0 / double(r);
    return -1.0 - 1.0 / double(q);
}

double NikishinSystem::min_interaction_eigenvalue() const {
    // Tridiagonal (1, -1/2): eigenvalues 1 - cos(k pi/(n+1)), k = 1..n.
    const double n = double(size());
    return 1.0 - std::cos(M_PI / (n + 1.0));
}

NikishinSystem nikishin_setup(long q, long r) {
    if (q < 1 || r < 1) throw ConfigError("nikishin_setup: q and r must be positive");
    if (std::gcd(q, r) != 1) throw ConfigError("nikishin_setup: q/r must be in lowest terms");
    NikishinSystem s;
    s.q = q;
    s.r = r;
    s.jmin = -q + 1;
    s.jmax = r - 1;
    return s;
}

} // namespace mbeq

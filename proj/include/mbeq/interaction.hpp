#pragma once

// Chain of q+r-1 interacting measures indexed j = -q+1 .. r-1 for the
// parameter theta = q/r in lowest terms.  Component j lives on alternating
// half-lines (even j on [0,inf), odd j on (-inf,0]), carries prescribed mass,
// and couples to its neighbours through a tridiagonal interaction matrix
//   c_jj = 1,  c_j,j+-1 = -1/2,  zero otherwise,
// which is positive definite for every size.  The mass-weighted row sums
// sum_k c_jk m_k vanish except in row 0, where they equal (1/q+1/r)/2; this
// constant controls both the spherical-kernel field correction and the
// log|x| coefficient of the total far field.

#include <vector>

#include "mbeq/halfline.hpp"
#include "mbeq/rational.hpp"

namespace mbeq {

struct NikishinSystem {
    long q = 1;
    long r = 1;
    long jmin = 0; // -q+1
    long jmax = 0; // r-1

    long size() const { return jmax - jmin + 1; }
    bool valid_index(long j) const { return j >= jmin && j <= jmax; }
    // Position of component j in a dense vector ordered jmin..jmax.
    std::size_t slot(long j) const;

    HalfLine line(long j) const;
    Rational mass(long j) const;        // 1 - j/r for j >= 0, 1 - |j|/q for j < 0
    Rational interaction(long i, long j) const;
    // sum_k c_jk m_k with out-of-range masses zero.
    Rational weighted_row_sum(long j) const;
    // Density decay exponent p with rho_j(s) ~ |s|^p as |s| -> inf.
    // Component 0 is compactly supported; returns 0 there.
    double decay_exponent(long j) const;

    // Smallest eigenvalue of the interaction matrix (always positive:
    // 1 - cos(pi/(n+1)) for size n).
    double min_interaction_eigenvalue() const;
};

// Validates q,r >= 1 and gcd(q,r) == 1.
NikishinSystem nikishin_setup(long q, long r);

} // namespace mbeq

#pragma once

// Balayage of a measure onto a half-line. The swept measure beta matches the
// logarithmic potential of sigma on the target and keeps its total mass:
//   U^beta = U^sigma on the target, mass(beta) = mass(sigma).
// Discretely this is the energy projection: minimize the quadratic
// 1/2 p^T K p - u^T p over cell masses p with the mass equality, where K is
// the target's kernel matrix and u the cell-averaged potential of sigma.
// Nonnegativity is enforced by an active-set loop (violating cells are
// pinned to zero and the saddle system is re-solved).

#include "mbeq/measure.hpp"

namespace mbeq {

struct BalayageOptions {
    double regularization = 0.0;  // added to the kernel diagonal when needed
    int max_active_rounds = 80;
    double residual_tol = 1e-8;   // linear-solve residual guard
};

struct BalayageResult {
    DiscreteMeasure measure;
    double shift = 0.0;          // uniform potential offset absorbed by the
                                 // mass constraint (small when the grid is
                                 // wide enough for the tail)
    double residual = 0.0;       // linear system residual, infinity norm
    int active_rounds = 0;
    bool regularized = false;
};

BalayageResult balayage_halfline_full(const DiscreteMeasure& sigma, HalfLine target,
                                      const Grid& grid, const BalayageOptions& opts = {});

DiscreteMeasure balayage_halfline(const DiscreteMeasure& sigma, HalfLine target,
                                  const Grid& grid);

} // namespace mbeq

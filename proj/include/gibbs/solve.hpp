#pragma once

#include <array>
#include <vector>

#include "gibbs/model.hpp"
#include "gibbs/polyroots.hpp"

namespace gibbs {

// Each solver returns every fixed point of its ansatz family at the given
// parameters, residual-verified against the full recursion.  Asymmetric
// families return one record per unordered pair; the row-swap partner is
// accounted for by census multiplicity.

// Free family (m = 0): always contains (1,1,1); two extra branches with
// u = v = 1 and w = root^k appear once big_theta exceeds (k+1)/(k-1).
std::vector<ReducedSolution> solve_free(const ModelParams& p);

// Symmetric u = v, w = 1 family (any k).
std::vector<ReducedSolution> solve_sym_w1(int m, const ModelParams& p);

// Symmetric u = v, w != 1 family (k = 2 only).
std::vector<ReducedSolution> solve_sym_wne1(int m, const ModelParams& p);

// Asymmetric u != v, w = 1 family (k = 2 only).
std::vector<ReducedSolution> solve_asym_w1(int m, const ModelParams& p);

// Asymmetric w != 1 family (k = 2 only).  Includes the sector-independent
// common solutions (z, 1, z); the explicit radical candidates for this case
// are kept only when they re-verify against the full system.
std::vector<ReducedSolution> solve_asym_wne1(int m, const ModelParams& p);

// The quartic in z whose positive roots generate the symmetric w != 1
// family, produced by exact polynomial division (degree must be 4).
Polynomial sym_wne1_quartic(int m, const ModelParams& p);

// Branch data for the asymmetric w = 1 family: the two roots (g, h) of the
// branch quadratic; valid means h > 0, g > 0 and 2h - g^2 >= 0.
struct GHBranch {
  double g = 0.0, h = 0.0;
  bool real = false;   // branch root is real
  bool valid = false;  // yields a solution pair
};
std::array<GHBranch, 2> asym_w1_branches(int m, const ModelParams& p);

// Roots z < 1 < z' of the shared quadratic z^2 - S z + 1; empty when the
// common solutions (z,1,z) do not exist (big_theta <= 3).  Ascending order.
std::vector<double> common_z_values(const ModelParams& p);

}  // namespace gibbs

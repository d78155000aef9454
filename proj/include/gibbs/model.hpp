#pragma once

#include <string>
#include <vector>

namespace gibbs {

// Coupled spin model on the Cayley tree with branching number k: an Ising
// spin in {-1,+1} and a Potts color in {1..q} per site, interacting only
// when neighboring colors agree.  theta = exp(J*beta).
struct ModelParams {
  double theta = 2.0;
  int q = 5;
  int k = 2;
};

// ---- scalar derived quantities -------------------------------------------

// (theta + q - 1) / (1/theta + q - 1): controls branching of the free law.
double big_theta(const ModelParams& p);
// (theta + 1/theta) / 2.
double tau_of_theta(double theta);
// (k + q - 1) / (k - 1): the tau value at which symmetric w=1 roots touch z=1.
double tau_critical(int k, int q);

// theta above which the free boundary law acquires two extra branches.
double theta_c_free(int k, int q);
// theta above which the solution count saturates (the main transition).
double theta_c_main(int k, int q);
// theta at which the symmetric w=1 family with |M| = m is born (k = 2 only).
double theta_c_sym(int q, int m);

// ---- reduced solutions ----------------------------------------------------

enum class CaseTag { free_sol, sym_w1, sym_wne1, asym_w1, asym_wne1 };
const char* to_string(CaseTag t);

// A translation-invariant fixed point in sector coordinates: colors in a
// distinguished set M (|M| = m) carry u on the minus row and v on the plus
// row; other colors carry 1 and w.  The free family uses m = 0.
struct ReducedSolution {
  int m = 0;
  CaseTag tag = CaseTag::free_sol;
  int branch = 0;  // distinguishes radical branches within a case
  double u = 1.0, v = 1.0, w = 1.0;
  bool double_root = false;  // two branches coincide at this theta
};

struct ReducedTriple {
  double u = 1.0, v = 1.0, w = 1.0;
};

// One application of the fixed-point recursion restricted to the sector
// coordinates (u, v, w) for a sector of size m >= 1.  For m = 0 only the w
// coordinate is meaningful; u and v are returned as 1.
ReducedTriple sector_map(const ModelParams& p, int m, const ReducedTriple& t);

// Symmetry actions on sector coordinates.
ReducedTriple exchange_uv(const ReducedTriple& t);       // (v, u, w)
ReducedTriple swap_rows_triple(const ReducedTriple& t);  // (v/w, u/w, 1/w)

// Sector-complement: a solution for |M| = m induces one for |M| = q - m.
ReducedSolution complement(const ReducedSolution& s, const ModelParams& p);

// ---- full boundary laws ---------------------------------------------------

// Boundary-law weights z_{eps,i} on the 2q states, normalized so that
// z_minus.back() == 1.
struct FullBoundaryLaw {
  std::vector<double> z_minus, z_plus;
};

// The full fixed-point recursion on boundary laws.
FullBoundaryLaw fixed_point_map(const FullBoundaryLaw& z, const ModelParams& p);

// Layout of a reduced solution into full coordinates.  subset_M lists the
// 0-based colors carrying (u, v); the free case ignores subset_M.  With
// swap_rows the two rows are exchanged and the law renormalized so
// z_minus.back() == 1; swapping is rejected for laws invariant under it.
FullBoundaryLaw embed(const ReducedSolution& s, const ModelParams& p,
                      const std::vector<int>& subset_M, bool swap_rows = false);

// Max-norm fixed-point defect of a law / of a reduced solution embedded on
// the canonical sector {0..m-1}.
double residual(const FullBoundaryLaw& z, const ModelParams& p);
double residual(const ReducedSolution& s, const ModelParams& p);

// Probability of observing states (eta,i),(eps,j) across a fixed edge; colors
// are 0-based, eta/eps in {-1,+1}.
double edge_marginal(const FullBoundaryLaw& z, const ModelParams& p, int eta,
                     int i, int eps, int j);

}  // namespace gibbs

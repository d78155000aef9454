#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "gibbs/model.hpp"

namespace gibbs {

// Row-stochastic transition matrix of the tree-indexed Markov chain attached
// to a boundary law.  States are ordered (-1, color 0..q-1) then
// (+1, color 0..q-1).
struct TransitionMatrix {
  int q = 0;
  std::vector<double> entries;  // row-major, (2q) x (2q)
  double at(int row, int col) const { return entries[row * 2 * q + col]; }
};

// P[(eta,i) -> (eps,j)] proportional to theta^(eta*eps*delta_ij) * z[eps,j].
TransitionMatrix build_transition(const FullBoundaryLaw& z,
                                  const ModelParams& p);

enum class KSVerdict { non_extreme, inconclusive };
const char* to_string(KSVerdict v);

// Spectral data of the chain plus the Kesten-Stigum check: k * lambda2^2 > 1
// certifies non-extremality of the measure; the converse does not hold, so
// the only other verdict is "inconclusive".
struct SpectralReport {
  std::vector<std::complex<double>> eigenvalues;  // sorted by modulus, desc
  double lambda2 = 0.0;                           // second-largest modulus
  double ks_statistic = 0.0;                      // k * lambda2^2
  KSVerdict verdict = KSVerdict::inconclusive;
};

SpectralReport spectrum(const TransitionMatrix& P, int k);

// Stationary distribution: the positive left eigenvector of eigenvalue 1,
// normalized to total mass 1.
std::vector<double> stationary_distribution(const TransitionMatrix& P);

// Boundary law with every weight 1 except w on the plus row of all colors
// but the first.  The closed-form spectral analysis of the two branch
// measures uses this law with w = z_*(theta) or z^*(theta).
FullBoundaryLaw marked_color_law(const ModelParams& p, double w);

// The two branch values z_* < z^* in radical form (q = 5, k = 2); they equal
// the w values of the nontrivial free-family laws.  Throws below the
// branching point.
std::pair<double, double> branch_w_radical(double theta);

// Eigenvalues besides 1 of the all-ones-law chain: first value has
// multiplicity q-1, second (the second-largest modulus) multiplicity q.
std::pair<double, double> uniform_law_eigenvalues(const ModelParams& p);

// Closed-form eigenvalues of the marked-color-law chain.  The flip mode at
// the marked color dominates for w < 1; the color-contrast mode among the
// q-1 unmarked colors (multiplicity q-2) dominates for w > 1 (q = 5 only).
double lambda_marked_flip(const ModelParams& p, double w);
double lambda_unmarked_contrast(const ModelParams& p, double w);

// Interval of theta on which the Kesten-Stigum statistic of the all-ones-law
// measure stays <= 1 at k = 2; the measure is non-extreme outside it.
std::pair<double, double> ks_uniform_interval(int q, int k = 2);

// Which branch measure: w = z_*(theta) (lower) or w = z^*(theta) (upper).
enum class BranchMeasure { lower, upper };

// Theta at which the Kesten-Stigum statistic of the chosen branch measure
// crosses 1, found by bisection on the numeric spectrum along the branch.
double ks_threshold(BranchMeasure which, const ModelParams& p);

}  // namespace gibbs

#pragma once

// Sufficient-extremality analysis for the three symmetric measures of the
// coupled spin model: the all-ones (free) measure and the two branch
// measures with law (1,...,1 | 1,w,...,w), w the lower or upper branch
// weight.  The test is the reconstruction-impossibility bound
// k * kappa * gamma < 1, with kappa the worst-case variational distance
// between transition rows and gamma a uniform neighbour-influence bound.

#include <string>
#include <utility>

#include "gibbs/chain.hpp"
#include "gibbs/model.hpp"

namespace gibbs {

enum class Measure { free_measure, branch_lower, branch_upper };

std::string to_string(Measure m);

enum class MSWVerdict { extreme, inconclusive };

std::string to_string(MSWVerdict v);

// The six closed-form row-distance sums for the marked-color transition
// matrix, one per distinguishable pair of row types.
struct SSums {
  double s1 = 0.0;  // minus-marked vs plus-marked row
  double s2 = 0.0;  // two minus rows at unmarked colors
  double s3 = 0.0;  // two plus rows at unmarked colors
  double s4 = 0.0;  // minus-marked vs plus-unmarked row
  double s5 = 0.0;  // minus-unmarked vs plus-unmarked row, different colors
  double s6 = 0.0;  // minus and plus rows at the same unmarked color
};

struct ExtremalityReport {
  double theta = 0.0;
  Measure measure = Measure::free_measure;
  double w = 1.0;             // branch weight entering the law
  double kappa = 0.0;         // closed-form variational-distance coefficient
  double gamma_bound = 0.0;   // neighbour-influence bound
  double product = 0.0;       // k * kappa * gamma
  double ks_statistic = 0.0;  // k * lambda2^2 from the chain spectrum
  MSWVerdict msw_verdict = MSWVerdict::inconclusive;
  KSVerdict ks_verdict = KSVerdict::inconclusive;
};

// Exact worst-case variational distance between rows of a stochastic
// matrix: half the largest l1 distance over row pairs.
double kappa_of(const TransitionMatrix& P);

// The six sums evaluated from the closed formulas.  Requires theta > 1,
// w > 0, q >= 2; the unmarked-pair sums are vacuous for small q but the
// formulas remain defined.
SSums s_sums(double theta, double w, int q);

// Closed-form kappa along the u = v = 1 family: half of max{S2, S3} for
// w < 1, half of S6 for w > 1, and the symmetric-law value
// (theta - 1/theta) / (theta + 1/theta + 2(q-1)) at w = 1.
double kappa_closed(double theta, double w, int q);

// Unique positive root of -c^6 - 2c^5 - c^4 + 2c^2 + 2c + 1, the
// square-root variable at which the two influence-norm branches exchange
// dominance.  The branch switch in g_norm happens at the square of this
// value (the substitution was c = sqrt(a)).
double a_critical();

// Norm of the two-site influence function g: the radical branch
// |a*sqrt(a) - 1| (a + sqrt(a) + 1) / (a (a+1)(sqrt(a)+1)) while it
// dominates, |a - 1| beyond the switch point a_critical()^2.
double g_norm(double a);

// Norm of the companion influence function g1: |a - 1| / (a + 1).
double g1_norm(double a);

// Uniform influence bound gamma for a measure at the given theta:
// the g-norm value at theta for the free measure, and
// (theta^2 - 1) / (theta^2 + 1) for the branch measures.
double gamma_bound(Measure m, double theta, int q);

// Full sufficient-extremality report: kappa from the closed forms along
// the branch, gamma from gamma_bound, product = k * kappa * gamma,
// verdicts from both the product test and the Kesten-Stigum statistic.
ExtremalityReport msw_check(Measure m, const ModelParams& p);

// Boundary theta at which k * kappa * gamma crosses 1 for a branch
// measure (bisection just above the branch birth point).
double msw_boundary(Measure m, const ModelParams& p);

// The two positive roots of 2 theta^3 - 3 theta^2 - 2 q theta + 1, whose
// interval is the product < 1 region of the free measure under the
// gamma = theta - 1 bound.
std::pair<double, double> free_measure_cubic_roots(int q);

// The two intervals of theta where neither the product test nor the
// Kesten-Stigum test decides the free measure.
std::pair<std::pair<double, double>, std::pair<double, double>>
free_measure_undecided_gap(int q);

}  // namespace gibbs

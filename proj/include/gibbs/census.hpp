#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gibbs/model.hpp"

namespace gibbs {

struct CensusEntry {
  ReducedSolution solution;
  long long orbit_multiplicity = 1;
};

// Complete list of translation-invariant splitting Gibbs measures at one
// theta, one entry per symmetry-orbit representative.  Multiplicity rules:
// the all-ones solution counts 1; each nontrivial free branch counts 2 (the
// measure and its spin-flip); symmetric w = 1 entries count C(q, m) (one per
// color subset; they are flip-invariant); every other entry counts
// 2 * C(q, m).  Only sectors m <= floor(q/2) are enumerated, since m and
// q - m describe the same measures.
struct CensusReport {
  double theta = 0.0;
  std::vector<CensusEntry> entries;  // sorted by (m, tag, branch, u)
  long long total = 0;
  std::map<std::pair<CaseTag, int>, long long> class_counts;
  bool partial = false;  // k >= 3: only the free and symmetric w=1 families
};

CensusReport enumerate(const ModelParams& p);

// A theta at which the structure of the solution set changes, with every
// analytically distinct mechanism that fires there (several can coincide).
struct CriticalValue {
  double theta = 0.0;
  std::string kind;                  // kind of the first merged event
  std::vector<std::string> cluster;  // all coinciding kinds
};

// Locates every structural event in (theta_lo, theta_hi]: branching of the
// free family, the main phase-transition temperature, reality boundaries of
// the closed-form families, tangency (birth/death) of the asymmetric w = 1
// branches, and count changes of the symmetric w != 1 family.  Events closer
// than merge_tol are reported as one clustered CriticalValue.
std::vector<CriticalValue> critical_scan(const ModelParams& p, double theta_lo,
                                         double theta_hi,
                                         double merge_tol = 1e-3);

enum class Coupling { ferromagnetic, antiferromagnetic };

// Temperature regimes for the guaranteed lower bounds below.  Temperature
// decreases as theta = exp(J beta) grows (ferromagnetic J > 0).
enum class Regime {
  unique_phase,     // hotter than every critical temperature
  window,           // between consecutive sector critical temperatures (index m)
  critical_sector,  // exactly at the sector-m critical temperature
  deep_cold,        // colder than all sector critical temperatures, off T_cr
  main_critical     // exactly at the main transition temperature
};

// Guaranteed minimum number of measures in the given regime (m is the sector
// index for window / critical_sector regimes, ignored otherwise).
long long lower_bound_counts(const ModelParams& p, Coupling coupling,
                             Regime regime, int m = 0);

}  // namespace gibbs

#include "gibbs/census.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "gibbs/polyroots.hpp"
#include "gibbs/solve.hpp"

namespace gibbs {
namespace {

long long binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  long long out = 1;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

// Collapses a record list to one representative per row-swap orbit.  Records
// whose swap image (v/w, u/w, 1/w) also appears in the list are paired and
// the member with w >= 1 represents the pair; an unpaired record represents
// its orbit alone.
std::vector<ReducedSolution> swap_orbit_reps(
    const std::vector<ReducedSolution>& recs) {
  std::vector<bool> used(recs.size(), false);
  std::vector<ReducedSolution> reps;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const ReducedTriple mate =
        swap_rows_triple({recs[i].u, recs[i].v, recs[i].w});
    std::size_t partner = recs.size();
    for (std::size_t j = 0; j < recs.size(); ++j) {
      if (used[j]) continue;
      if (close_rel(recs[j].u, mate.u, 1e-7) &&
          close_rel(recs[j].v, mate.v, 1e-7) &&
          close_rel(recs[j].w, mate.w, 1e-7)) {
        partner = j;
        break;
      }
    }
    if (partner < recs.size()) {
      used[partner] = true;
      reps.push_back(recs[i].w >= 1.0 ? recs[i] : recs[partner]);
    } else {
      reps.push_back(recs[i]);
    }
  }
  return reps;
}

}  // namespace

CensusReport enumerate(const ModelParams& p) {
  if (p.q < 2) throw std::invalid_argument("census: q must be at least 2");
  if (p.k < 2) throw std::invalid_argument("census: k must be at least 2");
  if (!(p.theta > 1.0))
    throw std::invalid_argument("census: theta must exceed 1");

  CensusReport rep;
  rep.theta = p.theta;
  rep.partial = (p.k != 2);

  auto add = [&rep](const ReducedSolution& s, long long mult) {
    rep.entries.push_back({s, mult});
  };

  for (const ReducedSolution& s : solve_free(p))
    add(s, s.branch == 0 ? 1 : 2);

  for (int m = 1; m <= p.q / 2; ++m) {
    const long long c = binomial(p.q, m);
    for (const ReducedSolution& s : solve_sym_w1(m, p)) add(s, c);
    if (p.k == 2) {
      for (const ReducedSolution& s : swap_orbit_reps(solve_sym_wne1(m, p)))
        add(s, 2 * c);
      for (const ReducedSolution& s : solve_asym_w1(m, p)) add(s, 2 * c);
      for (const ReducedSolution& s : swap_orbit_reps(solve_asym_wne1(m, p)))
        add(s, 2 * c);
    }
  }

  std::sort(rep.entries.begin(), rep.entries.end(),
            [](const CensusEntry& a, const CensusEntry& b) {
              const ReducedSolution& x = a.solution;
              const ReducedSolution& y = b.solution;
              if (x.m != y.m) return x.m < y.m;
              if (x.tag != y.tag) return x.tag < y.tag;
              if (x.branch != y.branch) return x.branch < y.branch;
              return x.u < y.u;
            });
  for (const CensusEntry& e : rep.entries) {
    rep.total += e.orbit_multiplicity;
    rep.class_counts[{e.solution.tag, e.solution.m}] += e.orbit_multiplicity;
  }
  return rep;
}

std::vector<CriticalValue> critical_scan(const ModelParams& p, double theta_lo,
                                         double theta_hi, double merge_tol) {
  if (!(theta_lo > 1.0) || !(theta_hi > theta_lo))
    throw std::invalid_argument("critical_scan: need 1 < theta_lo < theta_hi");
  if (merge_tol < 0.0)
    throw std::invalid_argument("critical_scan: merge_tol must be >= 0");
  if (p.k != 2)
    throw std::invalid_argument("critical_scan: only k = 2 is supported");

  std::vector<std::pair<double, std::string>> events;
  auto in_range = [&](double t) { return t > theta_lo && t <= theta_hi; };
  const double qd = p.q;

  // Free family branches once big_theta crosses (k+1)/(k-1).
  {
    auto f = [&p](double th) {
      ModelParams loc = p;
      loc.theta = th;
      return big_theta(loc) -
             static_cast<double>(p.k + 1) / static_cast<double>(p.k - 1);
    };
    if (f(theta_lo) < 0.0 && f(theta_hi) > 0.0)
      events.emplace_back(bracket_root(f, theta_lo, theta_hi),
                          "free_branching");
  }

  // Main transition: tau reaches the critical slope (k+q-1)/(k-1).
  {
    auto f = [&p](double th) {
      return tau_of_theta(th) - tau_critical(p.k, p.q);
    };
    if (f(theta_lo) < 0.0 && f(theta_hi) > 0.0)
      events.emplace_back(bracket_root(f, theta_lo, theta_hi),
                          "main_transition");
  }

  for (int m = 1; m <= p.q / 2; ++m) {
    const std::string suffix = " m=" + std::to_string(m);
    const double md = m;

    // Reality boundary of the symmetric w = 1 quadratic: discriminant
    // theta^4 - 4 theta^3 + (16 m^2 - 16 m q + 6) theta^2 - 4 theta + 1.
    {
      const Polynomial disc(
          {1.0, -4.0, 16.0 * md * md - 16.0 * md * qd + 6.0, -4.0, 1.0});
      for (const RootRecord& r : positive_roots(disc).roots)
        if (r.value > 1.0 && in_range(r.value))
          events.emplace_back(r.value, "sym_w1_reality" + suffix);
    }

    // Reality boundary of the asymmetric w = 1 branch quadratic, cleared of
    // 1/theta terms: (2 m theta PC0 - Pd PE)^2
    //               - 4 m^2 theta^2 (PC0^2 - 4 (q-m) theta Pd),
    // with PC0 = theta^2 + 2(q-m-1) theta + 1, Pd = theta^2 - 1,
    // PE = theta^2 + 2(m-1) theta + 1.
    {
      const Polynomial theta_poly({0.0, 1.0});
      const Polynomial pc0({1.0, 2.0 * (qd - md - 1.0), 1.0});
      const Polynomial pd({-1.0, 0.0, 1.0});
      const Polynomial pe({1.0, 2.0 * (md - 1.0), 1.0});
      const Polynomial lhs = (theta_poly * pc0).scaled(2.0 * md) - pd * pe;
      const Polynomial rhs =
          (theta_poly * theta_poly *
           (pc0 * pc0 - (theta_poly * pd).scaled(4.0 * (qd - md))))
              .scaled(4.0 * md * md);
      for (const RootRecord& r : positive_roots(lhs * lhs - rhs).roots) {
        if (!(r.value > 1.0 && in_range(r.value))) continue;
        // At the crossing the two branches meet at h = -qb / (2 m^2); a
        // negative merged branch stays outside the positive quadrant, so
        // nothing is born there and the crossing is not an event.
        const double th = r.value;
        const double h_merged =
            -(2.0 * md * (th + 1.0 / th + 2.0 * (qd - md - 1.0)) -
              (th - 1.0 / th) * (th + 1.0 / th + 2.0 * (md - 1.0))) /
            (2.0 * md * md);
        if (h_merged > 0.0)
          events.emplace_back(r.value, "asym_w1_reality" + suffix);
      }
    }

    // Tangency of an asymmetric w = 1 branch: 2h - g^2 crosses zero while the
    // branch is real (the two Ising rows merge and the pair is born or dies).
    {
      const int n_grid = 4000;
      for (int br = 0; br < 2; ++br) {
        auto f = [&p, m, br](double th) {
          ModelParams loc = p;
          loc.theta = th;
          const GHBranch b = asym_w1_branches(m, loc)[br];
          return b.real ? 2.0 * b.h - b.g * b.g
                        : std::numeric_limits<double>::quiet_NaN();
        };
        double prev_th = theta_lo;
        double prev_f = f(prev_th);
        for (int i = 1; i <= n_grid; ++i) {
          const double th = theta_lo + (theta_hi - theta_lo) * i / n_grid;
          const double cur_f = f(th);
          if (std::isfinite(prev_f) && std::isfinite(cur_f) &&
              ((prev_f < 0.0 && cur_f > 0.0) ||
               (prev_f > 0.0 && cur_f < 0.0))) {
            const double root = bracket_root(f, prev_th, th);
            ModelParams loc = p;
            loc.theta = root;
            const GHBranch b = asym_w1_branches(m, loc)[br];
            if (b.h > 0.0 && b.g > 0.0)
              events.emplace_back(root, "asym_w1_tangency" + suffix);
          }
          prev_th = th;
          prev_f = cur_f;
        }
      }
    }

    // Reality boundary of the asymmetric w != 1 radical family (sextic
    // discriminant in theta).
    {
      const Polynomial disc(
          {-3.0, -2.0 * (4.0 * qd + md - 7.0),
           md * md - 4.0 * md * qd - 4.0 * qd * qd + 24.0 * qd - 25.0,
           2.0 * (md * md - 2.0 * md * qd + 4.0 * qd * qd + 2.0 * md -
                  12.0 * qd + 10.0),
           md * md + 4.0 * md * qd - 4.0 * qd * qd - 4.0 * md + 8.0 * qd - 5.0,
           2.0 * (md - 1.0), 1.0});
      for (const RootRecord& r : positive_roots(disc).roots)
        if (r.value > 1.0 && in_range(r.value))
          events.emplace_back(r.value, "asym_wne1_reality" + suffix);
    }

    // Count changes of the symmetric w != 1 family.  No usable closed-form
    // event function exists (validity depends on the residual filter), so the
    // boundary is located by bisecting on the integer record count.
    {
      auto count_at = [&p, m](double th) {
        ModelParams loc = p;
        loc.theta = th;
        return static_cast<int>(solve_sym_wne1(m, loc).size());
      };
      const int n_grid = 4000;
      double prev_th = theta_lo;
      int prev_n = count_at(prev_th);
      for (int i = 1; i <= n_grid; ++i) {
        const double th = theta_lo + (theta_hi - theta_lo) * i / n_grid;
        const int cur_n = count_at(th);
        if (cur_n != prev_n) {
          double a = prev_th, b = th;
          for (int it = 0; it < 60 && b - a > 1e-13; ++it) {
            const double mid = 0.5 * (a + b);
            (count_at(mid) == prev_n ? a : b) = mid;
          }
          events.emplace_back(0.5 * (a + b), "sym_wne1_count" + suffix);
        }
        prev_th = th;
        prev_n = cur_n;
      }
    }
  }

  std::sort(events.begin(), events.end());

  std::vector<CriticalValue> out;
  std::size_t i = 0;
  while (i < events.size()) {
    std::size_t j = i + 1;
    while (j < events.size() && events[j].first - events[i].first <= merge_tol)
      ++j;
    CriticalValue cv;
    double sum = 0.0;
    for (std::size_t t = i; t < j; ++t) {
      sum += events[t].first;
      cv.cluster.push_back(events[t].second);
    }
    cv.theta = sum / static_cast<double>(j - i);
    cv.kind = events[i].second;
    out.push_back(std::move(cv));
    i = j;
  }
  return out;
}

long long lower_bound_counts(const ModelParams& p, Coupling coupling,
                             Regime regime, int m) {
  const int q = p.q;
  if (q < 3) throw std::invalid_argument("lower_bound_counts: need q >= 3");
  const bool ferro = (coupling == Coupling::ferromagnetic);
  auto pair_sum = [q](int upto) {  // sum_{s=1}^{upto} C(q, s)
    long long s = 0;
    for (int i = 1; i <= upto; ++i) s += binomial(q, i);
    return s;
  };
  switch (regime) {
    case Regime::unique_phase:
      return 1;
    case Regime::window:
      if (m < 0 || m > q / 2 - 1)
        throw std::invalid_argument(
            "lower_bound_counts: window index must lie in [0, q/2 - 1]");
      return (ferro ? 3 : 1) + 2 * pair_sum(m);
    case Regime::critical_sector:
      if (m < 1 || m > q / 2)
        throw std::invalid_argument(
            "lower_bound_counts: sector index must lie in [1, q/2]");
      return (ferro ? 3 : 1) + binomial(q, m) + 2 * pair_sum(m - 1);
    case Regime::deep_cold:
      return (1LL << q) + (ferro ? 1 : -1);
    case Regime::main_critical:
      if (ferro && q % 2 == 0)
        throw std::invalid_argument(
            "lower_bound_counts: ferromagnetic main-critical bound requires "
            "odd q");
      return (1LL << (q - 1)) + (ferro ? 2 : 0);
  }
  throw std::invalid_argument("lower_bound_counts: unknown regime");
}

}  // namespace gibbs

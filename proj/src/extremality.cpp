#include "gibbs/extremality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gibbs/polyroots.hpp"

namespace gibbs {

namespace {

// Row normalizers of the marked-color transition matrix.
double zn1(double theta, double w, int q) {
  return theta + 1.0 / theta + (q - 1.0) * (w + 1.0);
}
double zn2(double theta, double w, int q) {
  return theta + q + (1.0 / theta + q - 2.0) * w;
}
double zn4(double theta, double w, int q) { return zn2(1.0 / theta, w, q); }

double switch_poly(double c) {
  // -c^6 - 2c^5 - c^4 + 2c^2 + 2c + 1, Horner form.
  return ((((((-c - 2.0) * c - 1.0) * c) * c + 2.0) * c + 2.0) * c + 1.0);
}

double free_kappa(double theta, int q) {
  return std::abs(theta - 1.0 / theta) /
         (theta + 1.0 / theta + 2.0 * (q - 1.0));
}

}  // namespace

std::string to_string(Measure m) {
  switch (m) {
    case Measure::free_measure:
      return "free";
    case Measure::branch_lower:
      return "branch_lower";
    case Measure::branch_upper:
      return "branch_upper";
  }
  return "unknown";
}

std::string to_string(MSWVerdict v) {
  return v == MSWVerdict::extreme ? "extreme" : "inconclusive";
}

double kappa_of(const TransitionMatrix& P) {
  const int n = 2 * P.q;
  if (P.q < 1 || static_cast<int>(P.entries.size()) != n * n)
    throw std::invalid_argument("kappa_of: malformed transition matrix");
  double best = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double sum = 0.0;
      for (int l = 0; l < n; ++l) sum += std::abs(P.at(i, l) - P.at(j, l));
      best = std::max(best, sum);
    }
  return 0.5 * best;
}

SSums s_sums(double theta, double w, int q) {
  if (theta <= 1.0) throw std::invalid_argument("s_sums: theta must exceed 1");
  if (w <= 0.0) throw std::invalid_argument("s_sums: w must be positive");
  if (q < 2) throw std::invalid_argument("s_sums: q must be at least 2");
  const double z1 = zn1(theta, w, q);
  const double z2 = zn2(theta, w, q);
  const double z4 = zn4(theta, w, q);
  const double ti = 1.0 / theta;
  SSums s;
  s.s1 = 2.0 * (theta - ti) / z1;
  s.s2 = 2.0 * (theta - 1.0) * (theta + w) / (theta * z2);
  s.s3 = 2.0 * (theta - 1.0) * (theta + w) / (theta * z4);
  s.s4 = (ti + 1.0) * std::abs(theta / z1 - 1.0 / z4) +
         (q - 2.0) * (w + 1.0) * std::abs(1.0 / z1 - 1.0 / z4) +
         (w + ti) * std::abs(1.0 / z1 - theta / z4);
  s.s5 = ((q - 3.0) * (w + 1.0) + 2.0) * std::abs(1.0 / z2 - 1.0 / z4) +
         (1.0 + ti) * std::abs(theta / z2 - 1.0 / z4) +
         w * (1.0 + ti) * std::abs(1.0 / z2 - theta / z4);
  s.s6 = (q + (q - 2.0) * w) * std::abs(1.0 / z2 - 1.0 / z4) +
         std::abs(theta / z2 - ti / z4) + w * std::abs(ti / z2 - theta / z4);
  return s;
}

double kappa_closed(double theta, double w, int q) {
  if (theta <= 1.0)
    throw std::invalid_argument("kappa_closed: theta must exceed 1");
  if (w <= 0.0) throw std::invalid_argument("kappa_closed: w must be positive");
  if (w == 1.0) return free_kappa(theta, q);
  const SSums s = s_sums(theta, w, q);
  return w < 1.0 ? 0.5 * std::max(s.s2, s.s3) : 0.5 * s.s6;
}

double a_critical() {
  return bracket_root(switch_poly, 1e-6, 2.0, 1e-13);
}

double g_norm(double a) {
  if (a <= 0.0) throw std::invalid_argument("g_norm: a must be positive");
  const double cr = a_critical();
  if (a > cr * cr) return a - 1.0;
  const double r = std::sqrt(a);
  return std::abs(a * r - 1.0) * (a + r + 1.0) / (a * (a + 1.0) * (r + 1.0));
}

double g1_norm(double a) {
  if (a <= 0.0) throw std::invalid_argument("g1_norm: a must be positive");
  return std::abs(a - 1.0) / (a + 1.0);
}

double gamma_bound(Measure m, double theta, int q) {
  if (theta <= 0.0)
    throw std::invalid_argument("gamma_bound: theta must be positive");
  if (q < 2) throw std::invalid_argument("gamma_bound: q must be at least 2");
  switch (m) {
    case Measure::free_measure:
      return g_norm(theta);
    case Measure::branch_lower:
    case Measure::branch_upper:
      if (theta <= theta_c_free(2, q))
        throw std::domain_error(
            "gamma_bound: branch measures require theta above the branching "
            "point");
      return (theta * theta - 1.0) / (theta * theta + 1.0);
  }
  throw std::invalid_argument("gamma_bound: unknown measure");
}

ExtremalityReport msw_check(Measure m, const ModelParams& p) {
  if (p.theta <= 0.0)
    throw std::invalid_argument("msw_check: theta must be positive");
  if (p.q < 2) throw std::invalid_argument("msw_check: q must be at least 2");
  if (p.k < 2) throw std::invalid_argument("msw_check: k must be at least 2");
  ExtremalityReport rep;
  rep.theta = p.theta;
  rep.measure = m;
  double lambda2 = 0.0;
  if (m == Measure::free_measure) {
    rep.w = 1.0;
    rep.kappa = free_kappa(p.theta, p.q);
    rep.gamma_bound = gamma_bound(m, p.theta, p.q);
    lambda2 = std::abs(uniform_law_eigenvalues(p).second);
  } else {
    if (p.q != 5)
      throw std::invalid_argument(
          "msw_check: branch measures are implemented for q = 5");
    if (p.theta <= theta_c_free(p.k, p.q))
      throw std::domain_error("msw_check: branch measure absent at this theta");
    const auto [lo, hi] = branch_w_radical(p.theta);
    rep.w = m == Measure::branch_lower ? lo : hi;
    rep.kappa = kappa_closed(p.theta, rep.w, p.q);
    rep.gamma_bound = gamma_bound(m, p.theta, p.q);
    lambda2 = m == Measure::branch_lower
                  ? lambda_marked_flip(p, rep.w)
                  : lambda_unmarked_contrast(p, rep.w);
  }
  rep.product = p.k * rep.kappa * rep.gamma_bound;
  rep.ks_statistic = p.k * lambda2 * lambda2;
  rep.msw_verdict =
      rep.product < 1.0 ? MSWVerdict::extreme : MSWVerdict::inconclusive;
  rep.ks_verdict = rep.ks_statistic > 1.0 ? KSVerdict::non_extreme
                                          : KSVerdict::inconclusive;
  return rep;
}

double msw_boundary(Measure m, const ModelParams& p) {
  if (m == Measure::free_measure)
    throw std::invalid_argument(
        "msw_boundary: use free_measure_cubic_roots for the free measure");
  if (p.q != 5)
    throw std::invalid_argument("msw_boundary: implemented for q = 5");
  ModelParams loc = p;
  auto f = [&](double theta) {
    loc.theta = theta;
    return msw_check(m, loc).product - 1.0;
  };
  const double lo = theta_c_free(p.k, p.q) + 1e-9;
  const double hi = 10.0;
  if (f(lo) >= 0.0 || f(hi) <= 0.0)
    throw std::runtime_error("msw_boundary: no bracketed crossing");
  return bracket_root(f, lo, hi, 1e-12);
}

std::pair<double, double> free_measure_cubic_roots(int q) {
  if (q < 2)
    throw std::invalid_argument(
        "free_measure_cubic_roots: q must be at least 2");
  const Polynomial cubic({1.0, -2.0 * q, -3.0, 2.0});
  const RootSet rs = positive_roots(cubic);
  if (rs.roots.size() != 2)
    throw std::runtime_error(
        "free_measure_cubic_roots: expected exactly two positive roots");
  return {rs.roots[0].value, rs.roots[1].value};
}

std::pair<std::pair<double, double>, std::pair<double, double>>
free_measure_undecided_gap(int q) {
  const auto [lo_cubic, hi_cubic] = free_measure_cubic_roots(q);
  const auto [ks_lo, ks_hi] = ks_uniform_interval(q);
  return {{ks_lo, lo_cubic}, {hi_cubic, ks_hi}};
}

}  // namespace gibbs

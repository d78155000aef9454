#include "gibbs/chain.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gibbs/polyroots.hpp"
#include "gibbs/solve.hpp"

namespace gibbs {

const char* to_string(KSVerdict v) {
  return v == KSVerdict::non_extreme ? "non_extreme" : "inconclusive";
}

TransitionMatrix build_transition(const FullBoundaryLaw& z,
                                  const ModelParams& p) {
  const int q = p.q;
  if (static_cast<int>(z.z_minus.size()) != q ||
      static_cast<int>(z.z_plus.size()) != q)
    throw std::invalid_argument("build_transition: law has wrong dimension");
  for (int i = 0; i < q; ++i)
    if (!(z.z_minus[i] > 0.0) || !(z.z_plus[i] > 0.0))
      throw std::invalid_argument("build_transition: law must be positive");

  TransitionMatrix P;
  P.q = q;
  P.entries.assign(4 * q * q, 0.0);
  const double sign[2] = {-1.0, 1.0};
  for (int a = 0; a < 2; ++a) {
    for (int i = 0; i < q; ++i) {
      const int row = a * q + i;
      double norm = 0.0;
      for (int b = 0; b < 2; ++b) {
        const std::vector<double>& zr = (b == 0) ? z.z_minus : z.z_plus;
        for (int j = 0; j < q; ++j) {
          const double wgt =
              (i == j) ? std::pow(p.theta, sign[a] * sign[b]) : 1.0;
          P.entries[row * 2 * q + b * q + j] = wgt * zr[j];
          norm += wgt * zr[j];
        }
      }
      for (int c = 0; c < 2 * q; ++c) P.entries[row * 2 * q + c] /= norm;
    }
  }
  return P;
}

SpectralReport spectrum(const TransitionMatrix& P, int k) {
  const int n = 2 * P.q;
  if (n <= 0 || static_cast<int>(P.entries.size()) != n * n)
    throw std::invalid_argument("spectrum: malformed matrix");
  if (k < 1) throw std::invalid_argument("spectrum: k must be positive");
  for (int r = 0; r < n; ++r) {
    double s = 0.0;
    for (int c = 0; c < n; ++c) s += P.entries[r * n + c];
    if (std::abs(s - 1.0) > 1e-9)
      throw std::invalid_argument("spectrum: matrix is not row-stochastic");
  }

  Eigen::MatrixXd M(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) M(r, c) = P.entries[r * n + c];
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(M);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("spectrum: eigenvalue iteration failed");

  SpectralReport rep;
  rep.eigenvalues.reserve(n);
  for (int i = 0; i < n; ++i)
    rep.eigenvalues.emplace_back(solver.eigenvalues()[i].real(),
                                 solver.eigenvalues()[i].imag());
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
            [](const std::complex<double>& a, const std::complex<double>& b) {
              const double ma = std::abs(a), mb = std::abs(b);
              if (ma != mb) return ma > mb;
              if (a.real() != b.real()) return a.real() > b.real();
              return a.imag() > b.imag();
            });
  if (std::abs(rep.eigenvalues.front() - std::complex<double>(1.0, 0.0)) >
      1e-10)
    throw std::runtime_error("spectrum: leading eigenvalue is not 1");
  rep.lambda2 = std::abs(rep.eigenvalues[1]);
  rep.ks_statistic = k * rep.lambda2 * rep.lambda2;
  rep.verdict = rep.ks_statistic > 1.0 ? KSVerdict::non_extreme
                                       : KSVerdict::inconclusive;
  return rep;
}

std::vector<double> stationary_distribution(const TransitionMatrix& P) {
  const int n = 2 * P.q;
  Eigen::MatrixXd M(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) M(r, c) = P.entries[c * n + r];  // transpose
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(M);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("stationary_distribution: eigensolve failed");
  int best = 0;
  double best_dist = std::abs(solver.eigenvalues()[0] -
                              std::complex<double>(1.0, 0.0));
  for (int i = 1; i < n; ++i) {
    const double d =
        std::abs(solver.eigenvalues()[i] - std::complex<double>(1.0, 0.0));
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  if (best_dist > 1e-9)
    throw std::runtime_error("stationary_distribution: no eigenvalue 1");
  std::vector<double> pi(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    pi[i] = solver.eigenvectors().col(best)[i].real();
    total += pi[i];
  }
  for (double& x : pi) x /= total;
  for (double x : pi)
    if (!(x > 0.0))
      throw std::runtime_error(
          "stationary_distribution: eigenvector is not positive");
  return pi;
}

FullBoundaryLaw marked_color_law(const ModelParams& p, double w) {
  if (!(w > 0.0))
    throw std::invalid_argument("marked_color_law: w must be positive");
  FullBoundaryLaw z;
  z.z_minus.assign(p.q, 1.0);
  z.z_plus.assign(p.q, w);
  z.z_plus[0] = 1.0;
  return z;
}

std::pair<double, double> branch_w_radical(double theta) {
  const double t = theta;
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
  const double inner = t4 * t4 - 68.0 * t4 * t2 - 32.0 * t4 * t +
                       130.0 * t4 + 64.0 * t3 - 60.0 * t2 - 32.0 * t - 3.0;
  if (inner < 0.0)
    throw std::domain_error(
        "branch_w_radical: below the branching point, no real branches");
  const double num = t4 - 34.0 * t2 - 16.0 * t - 1.0;
  const double den = 16.0 * t2 + 8.0 * t + 1.0;
  const double sq = std::sqrt(inner);
  return {0.5 * (num - sq) / den, 0.5 * (num + sq) / den};
}

std::pair<double, double> uniform_law_eigenvalues(const ModelParams& p) {
  const double th = p.theta, q = p.q;
  const double den = th * th + 2.0 * (q - 1.0) * th + 1.0;
  return {(th - 1.0) * (th - 1.0) / den, (th * th - 1.0) / den};
}

double lambda_marked_flip(const ModelParams& p, double w) {
  const double th = p.theta, q = p.q;
  return (th * th - 1.0) /
         (th * th + (q - 1.0) * th * (w + 1.0) + 1.0);
}

double lambda_unmarked_contrast(const ModelParams& p, double w) {
  if (p.q != 5)
    throw std::invalid_argument(
        "lambda_unmarked_contrast: closed form is specific to q = 5");
  const double t = p.theta;
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
  const double w2 = w * w;
  const double d1 = (3.0 * t + 1.0) * (3.0 * t + 1.0) * t2 * w2 * w2 +
                    4.0 * (3.0 * t3 + 4.0 * t2 + 10.0 * t + 3.0) * t * w2 * w -
                    2.0 * (11.0 * t4 - 8.0 * t3 - 59.0 * t2 - 16.0 * t - 2.0) *
                        w2 -
                    4.0 * (5.0 * t3 - 4.0 * t2 - 26.0 * t - 5.0) * t * w +
                    (5.0 * t + 1.0) * (5.0 * t + 1.0) * t2;
  if (d1 < 0.0)
    throw std::domain_error("lambda_unmarked_contrast: negative discriminant");
  const double m = (3.0 * t3 + 10.0 * t2 + 3.0 * t) * w2 +
                   (t4 + 8.0 * t3 + 30.0 * t2 + 8.0 * t + 1.0) * w +
                   5.0 * t3 + 26.0 * t2 + 5.0 * t;
  return (t - 1.0) / (2.0 * m) *
         ((3.0 * t + 1.0) * t * w2 + 2.0 * (t + 4.0) * t2 * w + 5.0 * t2 + t +
          std::sqrt(d1));
}

std::pair<double, double> ks_uniform_interval(int q, int k) {
  if (q < 2) throw std::invalid_argument("ks_uniform_interval: need q >= 2");
  if (k != 2)
    throw std::invalid_argument(
        "ks_uniform_interval: closed form is specific to k = 2");
  const double qm = q - 1.0;
  const double theta1 = (qm + std::sqrt(qm * qm + 1.0)) / (std::sqrt(2.0) - 1.0);
  return {1.0 / theta1, theta1};
}

double ks_threshold(BranchMeasure which, const ModelParams& p) {
  auto statistic = [&](double theta) {
    ModelParams loc = p;
    loc.theta = theta;
    const std::vector<ReducedSolution> f = solve_free(loc);
    double lo_w = 1.0, hi_w = 1.0;
    for (const ReducedSolution& s : f) {
      if (s.branch == 0) continue;
      if (s.w < 1.0) lo_w = s.w;
      if (s.w > 1.0) hi_w = s.w;
    }
    const double w = which == BranchMeasure::lower ? lo_w : hi_w;
    const SpectralReport rep =
        spectrum(build_transition(marked_color_law(loc, w), loc), p.k);
    return rep.ks_statistic - 1.0;
  };
  const double lo = theta_c_free(p.k, p.q) + 1e-6;
  const double hi = 30.0;
  if (!(statistic(lo) < 0.0 && statistic(hi) > 0.0))
    throw std::runtime_error(
        "ks_threshold: statistic does not cross 1 on the search range");
  return bracket_root(statistic, lo, hi, 1e-12);
}

}  // namespace gibbs

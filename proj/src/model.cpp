#include "gibbs/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gibbs {

double big_theta(const ModelParams& p) {
  return (p.theta + p.q - 1.0) / (1.0 / p.theta + p.q - 1.0);
}

double tau_of_theta(double theta) { return 0.5 * (theta + 1.0 / theta); }

double tau_critical(int k, int q) {
  return (k + q - 1.0) / (k - 1.0);
}

double theta_c_free(int k, int q) {
  return (q - 1.0 + std::sqrt(static_cast<double>(k) * k + q * (q - 2.0))) /
         (k - 1.0);
}

double theta_c_main(int k, int q) {
  return (k + q - 1.0 + std::sqrt(static_cast<double>(q) * q + 2.0 * q * (k - 1.0))) /
         (k - 1.0);
}

double theta_c_sym(int q, int m) {
  const double tau = 1.0 + 2.0 * std::sqrt(static_cast<double>(m) * (q - m));
  return tau + std::sqrt(tau * tau - 1.0);
}

const char* to_string(CaseTag t) {
  switch (t) {
    case CaseTag::free_sol: return "free";
    case CaseTag::sym_w1: return "sym_w1";
    case CaseTag::sym_wne1: return "sym_wne1";
    case CaseTag::asym_w1: return "asym_w1";
    case CaseTag::asym_wne1: return "asym_wne1";
  }
  return "?";
}

namespace {
inline double int_pow(double x, int k) {
  if (k == 2) return x * x;
  if (k == 3) return x * x * x;
  return std::pow(x, k);
}
}  // namespace

ReducedTriple sector_map(const ModelParams& p, int m, const ReducedTriple& t) {
  const double th = p.theta, ith = 1.0 / p.theta;
  const double q = p.q;
  const double D = m * t.u + m * t.v + (ith + q - m - 1.0) * t.w +
                   (th + q - m - 1.0);
  const double Nw = m * t.u + m * t.v + (th + q - m - 1.0) * t.w +
                    (ith + q - m - 1.0);
  ReducedTriple r;
  r.w = int_pow(Nw / D, p.k);
  if (m >= 1) {
    const double Nu = (th + m - 1.0) * t.u + (ith + m - 1.0) * t.v +
                      (q - m) * t.w + (q - m);
    const double Nv = (ith + m - 1.0) * t.u + (th + m - 1.0) * t.v +
                      (q - m) * t.w + (q - m);
    r.u = int_pow(Nu / D, p.k);
    r.v = int_pow(Nv / D, p.k);
  } else {
    r.u = 1.0;
    r.v = 1.0;
  }
  return r;
}

ReducedTriple exchange_uv(const ReducedTriple& t) { return {t.v, t.u, t.w}; }

ReducedTriple swap_rows_triple(const ReducedTriple& t) {
  return {t.v / t.w, t.u / t.w, 1.0 / t.w};
}

ReducedSolution complement(const ReducedSolution& s, const ModelParams& p) {
  ReducedSolution r = s;
  r.m = p.q - s.m;
  r.u = 1.0 / s.u;
  r.v = s.w / s.u;
  r.w = s.v / s.u;
  return r;
}

FullBoundaryLaw fixed_point_map(const FullBoundaryLaw& z, const ModelParams& p) {
  const int q = p.q;
  if (static_cast<int>(z.z_minus.size()) != q ||
      static_cast<int>(z.z_plus.size()) != q)
    throw std::invalid_argument("fixed_point_map: law size != q");
  const double th = p.theta, ith = 1.0 / p.theta;
  double base = 0.0;  // color-independent part of the child sum
  for (int r = 0; r < q; ++r) base += z.z_minus[r] + z.z_plus[r];
  auto weight = [&](int eps, int i) {
    // sum over the child state (eps', r) of theta^{eps*eps'*[r==i]} z_{eps',r}
    const double tsame = eps > 0 ? th : ith;
    const double topp = eps > 0 ? ith : th;
    return base - z.z_minus[i] - z.z_plus[i] + topp * z.z_minus[i] +
           tsame * z.z_plus[i];
  };
  const double denom = weight(-1, q - 1);
  FullBoundaryLaw out;
  out.z_minus.resize(q);
  out.z_plus.resize(q);
  for (int i = 0; i < q; ++i) {
    out.z_minus[i] = int_pow(weight(-1, i) / denom, p.k);
    out.z_plus[i] = int_pow(weight(+1, i) / denom, p.k);
  }
  return out;
}

FullBoundaryLaw embed(const ReducedSolution& s, const ModelParams& p,
                      const std::vector<int>& subset_M, bool swap_rows) {
  const int q = p.q;
  FullBoundaryLaw z;
  z.z_minus.assign(q, 1.0);
  z.z_plus.assign(q, s.w);
  if (s.tag != CaseTag::free_sol) {
    if (static_cast<int>(subset_M.size()) != s.m)
      throw std::invalid_argument("embed: |subset_M| != m");
    for (int i : subset_M) {
      if (i < 0 || i >= q) throw std::invalid_argument("embed: color out of range");
      z.z_minus[i] = s.u;
      z.z_plus[i] = s.v;
    }
  }
  if (swap_rows) {
    if (std::abs(s.u - s.v) < 1e-15 && std::abs(s.w - 1.0) < 1e-15)
      throw std::invalid_argument("embed: swap of a swap-invariant law");
    std::swap(z.z_minus, z.z_plus);
  }
  const double norm = z.z_minus.back();
  for (double& x : z.z_minus) x /= norm;
  for (double& x : z.z_plus) x /= norm;
  return z;
}

double residual(const FullBoundaryLaw& z, const ModelParams& p) {
  const FullBoundaryLaw f = fixed_point_map(z, p);
  double r = 0.0;
  for (size_t i = 0; i < z.z_minus.size(); ++i) {
    r = std::max(r, std::abs(f.z_minus[i] - z.z_minus[i]));
    r = std::max(r, std::abs(f.z_plus[i] - z.z_plus[i]));
  }
  return r;
}

double residual(const ReducedSolution& s, const ModelParams& p) {
  std::vector<int> M(std::max(0, s.m));
  for (int i = 0; i < s.m; ++i) M[i] = i;
  return residual(embed(s, p, M, false), p);
}

double edge_marginal(const FullBoundaryLaw& z, const ModelParams& p, int eta,
                     int i, int eps, int j) {
  const int q = p.q;
  auto zval = [&](int e, int c) {
    return e < 0 ? z.z_minus[c] : z.z_plus[c];
  };
  double Z = 0.0;
  for (int e1 : {-1, 1})
    for (int c1 = 0; c1 < q; ++c1)
      for (int e2 : {-1, 1})
        for (int c2 = 0; c2 < q; ++c2)
          Z += zval(e1, c1) * std::pow(p.theta, c1 == c2 ? e1 * e2 : 0) *
               zval(e2, c2);
  return zval(eta, i) * std::pow(p.theta, i == j ? eta * eps : 0) *
         zval(eps, j) / Z;
}

}  // namespace gibbs

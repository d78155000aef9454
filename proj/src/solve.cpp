#include "gibbs/solve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gibbs {
namespace {

constexpr double kResidualTol = 1e-9;

void require_m_range(int m, int q) {
  if (m < 1 || m > q / 2)
    throw std::invalid_argument("sector size m out of range [1, q/2]");
}

void require_k2(const ModelParams& p) {
  if (p.k != 2)
    throw std::invalid_argument("this solution family is derived for k = 2 only");
}

double sector_defect(const ModelParams& p, int m, const double x[3]) {
  const ReducedTriple f = sector_map(p, m, {x[0], x[1], x[2]});
  return std::max({std::abs(f.u - x[0]), std::abs(f.v - x[1]),
                   std::abs(f.w - x[2])});
}

// Newton-refine a candidate on the sector fixed-point system.  Closed-form
// candidates can lose digits when an intermediate expression is
// ill-conditioned (the symmetric w != 1 family evaluates t = A/B with B near
// zero for some quartic roots, e.g. q = 5, m = 2, theta = 12); a genuine root
// converges back to full precision here.  The step is strictly local: a
// candidate that would have to travel more than ~1e-6 is left untouched so
// the residual filter judges the original values, and the structural
// invariants u = v and w = 1 of the symmetric / w = 1 families are restored
// afterwards.
void newton_polish(ReducedSolution& s, const ModelParams& p) {
  const bool uv_equal = s.u == s.v;
  const bool w_one = s.w == 1.0;
  double x[3] = {s.u, s.v, s.w};
  const double x0[3] = {s.u, s.v, s.w};
  double best[3] = {s.u, s.v, s.w};
  double best_defect = sector_defect(p, s.m, x);
  for (int it = 0; it < 8 && best_defect > 1e-14; ++it) {
    const ReducedTriple f = sector_map(p, s.m, {x[0], x[1], x[2]});
    const double g[3] = {f.u - x[0], f.v - x[1], f.w - x[2]};
    double A[3][4];
    for (int j = 0; j < 3; ++j) {
      double xh[3] = {x[0], x[1], x[2]};
      const double h = 1e-7 * (1.0 + std::abs(x[j]));
      xh[j] += h;
      const ReducedTriple fh = sector_map(p, s.m, {xh[0], xh[1], xh[2]});
      A[0][j] = (fh.u - f.u) / h - (j == 0 ? 1.0 : 0.0);
      A[1][j] = (fh.v - f.v) / h - (j == 1 ? 1.0 : 0.0);
      A[2][j] = (fh.w - f.w) / h - (j == 2 ? 1.0 : 0.0);
    }
    for (int r = 0; r < 3; ++r) A[r][3] = g[r];
    bool singular = false;
    for (int col = 0; col < 3 && !singular; ++col) {
      int piv = col;
      for (int r = col + 1; r < 3; ++r)
        if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
      if (std::abs(A[piv][col]) < 1e-14) {
        singular = true;
        break;
      }
      if (piv != col)
        for (int c2 = col; c2 < 4; ++c2) std::swap(A[piv][c2], A[col][c2]);
      for (int r = col + 1; r < 3; ++r) {
        const double fmul = A[r][col] / A[col][col];
        for (int c2 = col; c2 < 4; ++c2) A[r][c2] -= fmul * A[col][c2];
      }
    }
    if (singular) break;  // tangency: keep the closed-form values
    double step[3];
    for (int r = 2; r >= 0; --r) {
      double sum = A[r][3];
      for (int c2 = r + 1; c2 < 3; ++c2) sum -= A[r][c2] * step[c2];
      step[r] = sum / A[r][r];
    }
    bool ok = true;
    for (int j = 0; j < 3; ++j) {
      x[j] -= step[j];
      if (!(x[j] > 0.0) ||
          std::abs(x[j] - x0[j]) > 1e-6 * (1.0 + std::abs(x0[j])))
        ok = false;
    }
    if (!ok) break;
    const double d = sector_defect(p, s.m, x);
    if (d < best_defect) {
      best_defect = d;
      best[0] = x[0];
      best[1] = x[1];
      best[2] = x[2];
    }
  }
  s.u = best[0];
  s.v = best[1];
  s.w = best[2];
  if (uv_equal) s.u = s.v = 0.5 * (s.u + s.v);
  if (w_one) s.w = 1.0;
}

bool keep_if_valid(std::vector<ReducedSolution>& out, ReducedSolution s,
                   const ModelParams& p) {
  if (!(s.u > 0.0 && s.v > 0.0 && s.w > 0.0)) return false;
  newton_polish(s, p);
  if (residual(s, p) >= kResidualTol) return false;
  out.push_back(s);
  return true;
}

// Merge root records closer than 1e-7 into a single double-root record, as
// census totals at exact critical theta require.
std::vector<RootRecord> merged_records(const RootSet& rs) {
  std::vector<RootRecord> recs;
  for (const auto& r : rs.roots) {
    if (!recs.empty() &&
        std::abs(r.value - recs.back().value) <
            1e-7 * (1.0 + std::abs(r.value))) {
      recs.back().multiplicity = 2;
      recs.back().value = 0.5 * (recs.back().value + r.value);
    } else {
      recs.push_back(r);
    }
  }
  return recs;
}

}  // namespace

std::vector<ReducedSolution> solve_free(const ModelParams& p) {
  std::vector<ReducedSolution> out;
  ReducedSolution trivial;
  trivial.m = 0;
  trivial.tag = CaseTag::free_sol;
  trivial.branch = 0;
  out.push_back(trivial);

  // Nontrivial branches solve u^{k+1} - T u^k + T u - 1 = 0 with T =
  // big_theta; dividing out the root u = 1 leaves
  //   u^k + (1 - T)(u^{k-1} + ... + u) + 1 = 0.
  const double T = big_theta(p);
  std::vector<double> c(p.k + 1, 1.0 - T);
  c.front() = 1.0;
  c.back() = 1.0;
  const RootSet rs = positive_roots(Polynomial(std::move(c)), 1e-13);
  int branch = 1;
  for (const auto& rec : merged_records(rs)) {
    if (std::abs(rec.value - 1.0) < 1e-8) {
      // Tangency with the trivial solution (big_theta at the branching
      // threshold): record the degeneracy on the trivial entry.
      out.front().double_root = true;
      continue;
    }
    ReducedSolution s;
    s.m = 0;
    s.tag = CaseTag::free_sol;
    s.branch = branch++;
    s.u = 1.0;
    s.v = 1.0;
    s.w = std::pow(rec.value, p.k);
    s.double_root = rec.multiplicity > 1;
    keep_if_valid(out, s, p);
  }
  return out;
}

std::vector<ReducedSolution> solve_sym_w1(int m, const ModelParams& p) {
  require_m_range(m, p.q);
  // m z^k - (tau - 1)(z^{k-1} + ... + z) + (q - m) = 0.
  const double tau = tau_of_theta(p.theta);
  std::vector<double> c(p.k + 1, -(tau - 1.0));
  c.front() = static_cast<double>(p.q - m);
  c.back() = static_cast<double>(m);
  const RootSet rs = positive_roots(Polynomial(std::move(c)), 1e-13);
  std::vector<ReducedSolution> out;
  int branch = 1;
  for (const auto& rec : merged_records(rs)) {
    if (std::abs(rec.value - 1.0) < 1e-8) continue;  // free-solution duplicate
    ReducedSolution s;
    s.m = m;
    s.tag = CaseTag::sym_w1;
    s.branch = branch++;
    s.u = s.v = std::pow(rec.value, p.k);
    s.w = 1.0;
    s.double_root = rec.multiplicity > 1;
    keep_if_valid(out, s, p);
  }
  return out;
}

Polynomial sym_wne1_quartic(int m, const ModelParams& p) {
  require_k2(p);
  require_m_range(m, p.q);
  const double th = p.theta, ith = 1.0 / p.theta;
  const double q = p.q;
  const double c1 = (m - q + 1.0) * th * th + (q + m - 2.0) * th + 1.0;
  const double c0 = (q - m - 1.0) * th * th + (q - m) * th + 1.0;
  const double b1 = (th + 1.0) * ((m - q + 1.0) * th - 1.0);
  const double b0 = (th + 1.0) * (q - m) * th;

  const Polynomial A({0.0, c0, c1});
  const Polynomial B({b0, b1});
  const Polynomial z({0.0, 1.0});
  const Polynomial A2 = A * A, B2 = B * B, z2 = z * z;

  const Polynomial P5 =
      z * (B2.scaled(2.0 * m) * z2 + A2.scaled(ith + q - m - 1.0) +
           B2.scaled(th + q - m - 1.0)) -
      ((z2 * B2).scaled(th + ith + 2.0 * (m - 1.0)) + A2.scaled(q - m) +
       B2.scaled(q - m));

  // Exact division by B; a nonzero remainder or wrong degree signals an
  // algebra bug upstream.
  std::vector<double> a = P5.coeffs();
  const double lead = b1;
  std::vector<double> quot(a.size() - 1, 0.0);
  for (size_t i = a.size(); i-- > 1;) {
    const double f = a[i] / lead;
    quot[i - 1] = f;
    a[i] = 0.0;
    a[i - 1] -= f * b0;
  }
  if (std::abs(a[0]) > 1e-9 * std::max(1.0, P5.max_abs_coeff()))
    throw std::logic_error("sym_wne1_quartic: division remainder not negligible");
  Polynomial Q(std::move(quot));
  if (Q.degree() != 4)
    throw std::logic_error("sym_wne1_quartic: degree after cancellation != 4");
  return Q;
}

std::vector<ReducedSolution> solve_sym_wne1(int m, const ModelParams& p) {
  require_k2(p);
  require_m_range(m, p.q);
  std::vector<ReducedSolution> out;
  if (p.theta <= 1.0) return out;

  const double th = p.theta, ith = 1.0 / p.theta;
  const double q = p.q;
  const double c1 = (m - q + 1.0) * th * th + (q + m - 2.0) * th + 1.0;
  const double c0 = (q - m - 1.0) * th * th + (q - m) * th + 1.0;
  const double b1 = (th + 1.0) * ((m - q + 1.0) * th - 1.0);
  const double b0 = (th + 1.0) * (q - m) * th;

  const RootSet rs = positive_roots(sym_wne1_quartic(m, p), 1e-13);
  int branch = 1;
  for (const auto& rec : merged_records(rs)) {
    const double z = rec.value;
    const int label = branch++;

    // Recover t two ways.  The rational form t = A/B loses all precision when
    // its numerator and denominator nearly vanish together (their zeros cross
    // as theta varies), so the cubic in t obtained from the w-component of
    // the fixed-point equations at this z is solved as well; every candidate
    // must still pass the full-system residual filter below.
    std::vector<double> cand;
    const double B = b1 * z + b0;
    const double t_ab = (c1 * z * z + c0 * z) / B;
    if (std::isfinite(t_ab) && t_ab > 0.0) cand.push_back(t_ab);
    const double z2 = z * z;
    const Polynomial tcubic({2.0 * m * z2 + ith + q - m - 1.0,
                             -(2.0 * m * z2 + th + q - m - 1.0),
                             th + q - m - 1.0, -(ith + q - m - 1.0)});
    for (const auto& tr : positive_roots(tcubic, 1e-13).roots) {
      bool dup = false;
      for (double c : cand)
        if (std::abs(tr.value - c) < 1e-9 * (1.0 + std::abs(c))) dup = true;
      if (!dup) cand.push_back(tr.value);
    }

    const size_t before = out.size();
    for (double t : cand) {
      if (std::abs(t - 1.0) <= 1e-10) continue;
      ReducedSolution s;
      s.m = m;
      s.tag = CaseTag::sym_wne1;
      s.branch = label;
      s.u = s.v = z2;
      s.w = t * t;
      s.double_root = rec.multiplicity > 1;
      bool seen = false;
      for (size_t i = before; i < out.size(); ++i)
        if (std::abs(out[i].w - s.w) < 1e-7 * (1.0 + std::abs(s.w))) seen = true;
      if (!seen) keep_if_valid(out, s, p);
    }
  }
  return out;
}

std::array<GHBranch, 2> asym_w1_branches(int m, const ModelParams& p) {
  require_k2(p);
  require_m_range(m, p.q);
  std::array<GHBranch, 2> br{};
  if (p.theta <= 1.0) return br;
  const double th = p.theta, ith = 1.0 / p.theta;
  const double q = p.q;
  const double d = th - ith;
  const double C0 = th + ith + 2.0 * (q - m - 1.0);
  // m^2 h^2 + [2 m C0 - d (th + ith + 2(m-1))] h + C0^2 - 4 (q-m) d = 0.
  const double qa = static_cast<double>(m) * m;
  const double qb = 2.0 * m * C0 - d * (th + ith + 2.0 * (m - 1.0));
  const double qc = C0 * C0 - 4.0 * (q - m) * d;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return br;
  const double sq = std::sqrt(disc);
  const double h1 = (-qb - sq) / (2.0 * qa);
  const double h2 = (-qb + sq) / (2.0 * qa);
  int idx = 0;
  for (double h : {h1, h2}) {
    GHBranch& b = br[idx++];
    b.real = true;
    b.h = h;
    b.g = (m * h + C0) / d;
    b.valid = h > 0.0 && b.g > 0.0 && 2.0 * h - b.g * b.g >= -1e-12;
  }
  return br;
}

std::vector<ReducedSolution> solve_asym_w1(int m, const ModelParams& p) {
  require_k2(p);
  require_m_range(m, p.q);
  std::vector<ReducedSolution> out;
  if (p.theta <= 1.0) return out;
  const auto branches = asym_w1_branches(m, p);
  int branch = 1;
  for (const auto& b : branches) {
    const int label = branch++;
    if (!b.valid) continue;
    const double rad = std::sqrt(std::max(0.0, 2.0 * b.h - b.g * b.g));
    const double z = 0.5 * (b.g + rad);
    const double s_ = 0.5 * (b.g - rad);
    if (!(s_ > 0.0)) continue;
    ReducedSolution s;
    s.m = m;
    s.tag = CaseTag::asym_w1;
    s.branch = label;
    s.u = z * z;  // u >= v by construction
    s.v = s_ * s_;
    s.w = 1.0;
    s.double_root = rad < 1e-7;  // tangency z = s
    keep_if_valid(out, s, p);
  }
  return out;
}

std::vector<double> common_z_values(const ModelParams& p) {
  const double a = p.theta + p.q - 1.0;
  const double b = 1.0 / p.theta + p.q - 1.0;
  const double S = (a * a - 2.0 * a * b - b * b) / (b * b);
  if (S <= 2.0 + 1e-12) return {};
  const double sq = std::sqrt(S * S - 4.0);
  return {0.5 * (S - sq), 0.5 * (S + sq)};
}

std::vector<ReducedSolution> solve_asym_wne1(int m, const ModelParams& p) {
  require_k2(p);
  require_m_range(m, p.q);
  std::vector<ReducedSolution> out;
  if (p.theta <= 1.0) return out;

  // Common solutions (z, 1, z), shared by every sector size.
  const std::vector<double> zs = common_z_values(p);
  int branch = 1;
  for (size_t i = zs.size(); i-- > 0;) {  // larger root first
    ReducedSolution s;
    s.m = m;
    s.tag = CaseTag::asym_wne1;
    s.branch = branch++;
    s.u = zs[i];
    s.v = 1.0;
    s.w = zs[i];
    keep_if_valid(out, s, p);
  }

  // Explicit radical candidates for this family; elimination introduces
  // extraneous roots, so only residual-passing pairings are kept.
  const double th = p.theta, ith = 1.0 / p.theta;
  const double q = p.q, md = m;
  const double t2 = th * th, t3 = t2 * th, t4 = t3 * th, t5 = t4 * th,
               t6 = t5 * th;
  const double P = t6 + 2.0 * (md - 1.0) * t5 +
                   (md * md + 2.0 * md * q - 2.0 * q * q - 2.0 * md + 4.0 * q - 3.0) * t4 +
                   2.0 * (md * md - md * q + 2.0 * q * q - 6.0 * q + 6.0) * t3 +
                   (md * md - 2.0 * md * q - 2.0 * q * q + 12.0 * q - 13.0) * t2 -
                   2.0 * (2.0 * q - 3.0) * th - 1.0;
  const double Dd = t6 + 2.0 * (md - 1.0) * t5 +
                    (md * md + 4.0 * md * q - 4.0 * q * q - 4.0 * md + 8.0 * q - 5.0) * t4 +
                    2.0 * (md * md - 2.0 * md * q + 4.0 * q * q + 2.0 * md - 12.0 * q + 10.0) * t3 +
                    (md * md - 4.0 * md * q - 4.0 * q * q + 24.0 * q - 25.0) * t2 -
                    2.0 * (4.0 * q + md - 7.0) * th - 3.0;
  if (Dd >= 0.0) {
    const double cf = (th + 1.0) * ((th - 1.0) * (th - 1.0) + th * md);
    const double sq = std::sqrt(Dd);
    if (P > cf * sq) {
      const double den = (th - 1.0) * (th - 1.0) *
                         ((q - 1.0) * th + 1.0) * ((q - 1.0) * th + 1.0);
      for (int j = 0; j < 2; ++j) {
        const double w = 0.5 * (P + (j == 0 ? -1.0 : 1.0) * cf * sq) / den;
        if (!(w > 0.0)) continue;
        const double W = ((ith + q - 1.0) * w + (q - md)) / (th - ith);
        const double bq = (W + ith) * (W + ith) + 2.0 * ith + 1.0;
        const double qdisc = bq * bq - 4.0 * W * W;
        if (qdisc < 0.0) continue;
        const double r1 = 0.5 * (bq + std::sqrt(qdisc));
        const double r2 = 0.5 * (bq - std::sqrt(qdisc));
        for (auto [uu, vv] : {std::pair{r1, r2}, std::pair{r1, r1},
                              std::pair{r2, r2}}) {
          ReducedSolution s;
          s.m = m;
          s.tag = CaseTag::asym_wne1;
          s.branch = branch + j;
          s.u = std::max(uu, vv);
          s.v = std::min(uu, vv);
          s.w = w;
          keep_if_valid(out, s, p);
        }
      }
    }
  }
  return out;
}

}  // namespace gibbs

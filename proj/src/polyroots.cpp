#include "gibbs/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace gibbs {
namespace {

constexpr double kTrimRel = 1e-14;

// Remainder of a/b by synthetic division; b must be nonzero.
std::vector<double> poly_rem(std::vector<double> a, const std::vector<double>& b) {
  const int db = static_cast<int>(b.size()) - 1;
  const double lead = b.back();
  while (static_cast<int>(a.size()) - 1 >= db) {
    const int da = static_cast<int>(a.size()) - 1;
    const double f = a.back() / lead;
    for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
    a.pop_back();
  }
  return a;
}

void normalize_inplace(std::vector<double>& c) {
  double m = 0.0;
  for (double x : c) m = std::max(m, std::abs(x));
  if (m > 0.0)
    for (double& x : c) x /= m;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  double m = 0.0;
  for (double x : c_) m = std::max(m, std::abs(x));
  while (!c_.empty() && std::abs(c_.back()) <= kTrimRel * m) c_.pop_back();
}

Polynomial Polynomial::from_roots(const std::vector<double>& roots,
                                  double leading) {
  std::vector<double> c{leading};
  for (double r : roots) {
    std::vector<double> nc(c.size() + 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i) {
      nc[i + 1] += c[i];
      nc[i] -= r * c[i];
    }
    c = std::move(nc);
  }
  return Polynomial(std::move(c));
}

double Polynomial::operator()(double x) const {
  double v = 0.0;
  for (size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
  return v;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial();
  std::vector<double> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (c_.empty() || o.c_.empty()) return Polynomial();
  std::vector<double> r(c_.size() + o.c_.size() - 1, 0.0);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::scaled(double s) const {
  std::vector<double> r = c_;
  for (double& x : r) x *= s;
  return Polynomial(std::move(r));
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (double x : c_) m = std::max(m, std::abs(x));
  return m;
}

double Polynomial::cauchy_bound() const {
  if (c_.empty()) return 1.0;
  const double lead = std::abs(c_.back());
  double m = 0.0;
  for (size_t i = 0; i + 1 < c_.size(); ++i) m = std::max(m, std::abs(c_[i]));
  return 1.0 + m / lead;
}

int RootSet::count_with_multiplicity() const {
  int n = 0;
  for (const auto& r : roots) n += r.multiplicity;
  return n;
}

int descartes_positive_bound(const Polynomial& p) {
  const auto& c = p.coeffs();
  const double m = p.max_abs_coeff();
  int var = 0, prev = 0;
  for (double x : c) {
    if (std::abs(x) <= kTrimRel * m) continue;
    const int s = sign_of(x);
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

namespace {

// Sturm sequence of p, each element rescaled to unit max coefficient (positive
// rescaling preserves signs).  The chain stops early when a remainder is
// numerically zero, which happens exactly when p has a repeated factor; the
// truncated chain still counts distinct roots.
std::vector<std::vector<double>> sturm_chain(const Polynomial& p) {
  std::vector<std::vector<double>> chain;
  std::vector<double> p0 = p.coeffs();
  normalize_inplace(p0);
  chain.push_back(p0);
  std::vector<double> p1 = p.derivative().coeffs();
  if (p1.empty()) return chain;
  normalize_inplace(p1);
  chain.push_back(p1);
  while (chain.back().size() > 1) {
    std::vector<double> r = poly_rem(chain[chain.size() - 2], chain.back());
    double m = 0.0;
    for (double x : r) m = std::max(m, std::abs(x));
    while (!r.empty() && std::abs(r.back()) <= 1e-12 * std::max(1.0, m))
      r.pop_back();
    if (r.empty() || m <= 1e-12) break;
    for (double& x : r) x = -x;
    normalize_inplace(r);
    chain.push_back(std::move(r));
  }
  return chain;
}

double eval_coeffs(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

int sturm_variations(const std::vector<std::vector<double>>& chain, double x) {
  int var = 0, prev = 0;
  for (const auto& c : chain) {
    const int s = sign_of(eval_coeffs(c, x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

// Bisect f (given as coefficient vector) over a bracketing interval.
double bisect_coeffs(const std::vector<double>& c, double a, double b,
                     double fa, double tol) {
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = eval_coeffs(c, mid);
    if (fm == 0.0) return mid;
    if (sign_of(fm) == sign_of(fa)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

RootSet positive_roots(const Polynomial& p, double tol) {
  RootSet out;
  out.tolerance = tol;
  if (p.degree() <= 0) return out;

  // Factor out roots at the origin; they are not positive.
  std::vector<double> c = p.coeffs();
  const double mc = p.max_abs_coeff();
  size_t shift = 0;
  while (shift < c.size() && std::abs(c[shift]) <= kTrimRel * mc) ++shift;
  c.erase(c.begin(), c.begin() + static_cast<long>(shift));
  Polynomial q{std::vector<double>(c)};
  if (q.degree() <= 0) return out;

  const auto chain = sturm_chain(q);
  const Polynomial dq = q.derivative();
  const double hi = q.cauchy_bound() * (1.0 + 1e-12);

  struct Seg {
    double a, b;
    int va, vb;
  };
  std::deque<Seg> work;
  {
    const int v0 = sturm_variations(chain, 0.0);
    const int v1 = sturm_variations(chain, hi);
    if (v0 > v1) work.push_back({0.0, hi, v0, v1});
  }

  // A square-free polynomial ends its Sturm chain in a constant; an early
  // stop at a higher-degree element means that element is (up to sign) the
  // gcd of q and q', i.e. the repeated part.
  const bool has_repeated_factor = chain.back().size() > 1;

  while (!work.empty()) {
    Seg s = work.front();
    work.pop_front();
    const int n = s.va - s.vb;
    if (n <= 0) continue;
    if (n == 1 || (s.b - s.a) < tol) {
      // Refine a single isolated (or unresolvably clustered) root.
      double r;
      const double fa = q(s.a), fb = q(s.b);
      if (sign_of(fa) != sign_of(fb) && sign_of(fa) != 0) {
        r = bisect_coeffs(q.coeffs(), s.a, s.b, fa, tol);
        // Guarded Newton polish.
        for (int it = 0; it < 8; ++it) {
          const double d = dq(r);
          if (d == 0.0) break;
          const double step = q(r) / d;
          const double nr = r - step;
          if (!(nr > s.a - tol && nr < s.b + tol)) break;
          r = nr;
          if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(r))) break;
        }
      } else {
        // Even local multiplicity: q keeps its sign, but the repeated part
        // (final Sturm element) vanishes exactly at the root.
        const auto& g = chain.back();
        const double ga = eval_coeffs(g, s.a), gb = eval_coeffs(g, s.b);
        if (sign_of(ga) != sign_of(gb) && sign_of(ga) != 0) {
          r = bisect_coeffs(g, s.a, s.b, ga, tol * 1e-3);
        } else {
          const double da = dq(s.a), db = dq(s.b);
          if (sign_of(da) != sign_of(db) && sign_of(da) != 0)
            r = bisect_coeffs(dq.coeffs(), s.a, s.b, da, tol * 1e-3);
          else
            r = 0.5 * (s.a + s.b);
        }
      }
      if (r > 0.0) {
        RootRecord rec;
        rec.value = r;
        rec.multiplicity = 1;
        if (n > 1) {
          rec.multiplicity = 2;
        } else if (has_repeated_factor) {
          // Derivative-scaled flag, consulted only when the chain shows a
          // repeated factor somewhere in q.
          const double thr = 1e-7 * q.max_abs_coeff() *
                             std::pow(std::max(1.0, std::abs(r)),
                                      std::max(0, q.degree() - 1));
          if (std::abs(dq(r)) <= thr) rec.multiplicity = 2;
        }
        out.roots.push_back(rec);
      }
      continue;
    }
    double mid = 0.5 * (s.a + s.b);
    if (q(mid) == 0.0) mid += (s.b - s.a) * 1e-9;
    const int vm = sturm_variations(chain, mid);
    work.push_back({s.a, mid, s.va, vm});
    work.push_back({mid, s.b, vm, s.vb});
  }

  std::sort(out.roots.begin(), out.roots.end(),
            [](const RootRecord& a, const RootRecord& b) {
              return a.value < b.value;
            });
  return out;
}

double bracket_root(const std::function<double(double)>& f, double lo,
                    double hi, double tol) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (sign_of(flo) == sign_of(fhi))
    throw std::invalid_argument("bracket_root: no sign change on [lo, hi]");
  for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (sign_of(fm) == sign_of(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace gibbs

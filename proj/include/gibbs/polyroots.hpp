#pragma once

#include <functional>
#include <vector>

namespace gibbs {

// Dense univariate real polynomial.  coeffs()[i] multiplies x^i.  Leading
// coefficients that are negligible relative to the largest coefficient are
// trimmed at construction so degree() reflects the numerically meaningful
// degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);
  static Polynomial from_roots(const std::vector<double>& roots,
                               double leading = 1.0);

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coeffs() const { return c_; }

  double operator()(double x) const;  // Horner evaluation
  Polynomial derivative() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial scaled(double s) const;

  double max_abs_coeff() const;
  // 1 + max_i |c_i / c_n|: every root has magnitude below this.
  double cauchy_bound() const;

 private:
  std::vector<double> c_;
};

struct RootRecord {
  double value = 0.0;
  int multiplicity = 1;
};

// Roots sorted ascending by value, each refined to within `tolerance`.
struct RootSet {
  std::vector<RootRecord> roots;
  double tolerance = 0.0;
  int count_distinct() const { return static_cast<int>(roots.size()); }
  int count_with_multiplicity() const;
};

// Sign-variation upper bound on the number of roots in (0, inf), counted with
// multiplicity.
int descartes_positive_bound(const Polynomial& p);

// All real roots in (0, inf).  Roots are isolated with a Sturm-sequence
// bisection search (so clustered roots are separated reliably), then refined
// to an interval of width <= tol.  A root at which the derivative also
// vanishes numerically is reported once with multiplicity 2.
RootSet positive_roots(const Polynomial& p, double tol = 1e-11);

// Deterministic bisection for a continuous function with a sign change on
// [lo, hi].  Throws std::invalid_argument when f(lo) and f(hi) have the same
// strict sign.  The returned value is reproducible bit-for-bit.
double bracket_root(const std::function<double(double)>& f, double lo,
                    double hi, double tol = 1e-13);

}  // namespace gibbs

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "gibbs/census.hpp"
#include "gibbs/model.hpp"

using namespace gibbs;

namespace {

ModelParams at(double theta) {
  ModelParams p;
  p.theta = theta;
  return p;
}

std::vector<std::vector<int>> subsets_of_size(int q, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    int pos = m - 1;
    while (pos >= 0 && idx[pos] == q - m + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int j = pos + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<double> flatten(const FullBoundaryLaw& z) {
  std::vector<double> out = z.z_minus;
  out.insert(out.end(), z.z_plus.begin(), z.z_plus.end());
  return out;
}

bool laws_close(const std::vector<double>& a, const std::vector<double>& b,
                double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) >
        tol * (1.0 + std::max(std::abs(a[i]), std::abs(b[i]))))
      return false;
  return true;
}

// Deduplicating pool of boundary laws.
struct LawPool {
  std::vector<std::vector<double>> laws;
  void insert(const std::vector<double>& law) {
    for (const auto& have : laws)
      if (laws_close(have, law, 1e-8)) return;
    laws.push_back(law);
  }
};

// Every full boundary law represented by a census entry: one law per color
// subset and row order.  The (z,1,z) entries are already the subset-dependent
// form (z sits on the minus row of the subset colors only); their
// uv-exchanged twin (1,z,z) embeds to the free law carried by the free
// entries, so it is deliberately not part of any sector entry.
std::vector<std::vector<double>> entry_laws(const CensusEntry& e,
                                            const ModelParams& p) {
  LawPool pool;
  const ReducedSolution& s = e.solution;
  if (s.tag == CaseTag::free_sol) {
    pool.insert(flatten(embed(s, p, {})));
    if (s.branch != 0) pool.insert(flatten(embed(s, p, {}, true)));
    return pool.laws;
  }
  const bool swap_distinct =
      std::abs(s.u - s.v) > 1e-12 || std::abs(s.w - 1.0) > 1e-12;
  for (const auto& subset : subsets_of_size(p.q, s.m)) {
    pool.insert(flatten(embed(s, p, subset)));
    if (swap_distinct) pool.insert(flatten(embed(s, p, subset, true)));
  }
  return pool.laws;
}

const CriticalValue* find_kind(const std::vector<CriticalValue>& cvs,
                               const std::string& kind) {
  for (const auto& cv : cvs)
    for (const auto& k : cv.cluster)
      if (k == kind) return &cv;
  return nullptr;
}

}  // namespace

TEST_CASE("census totals match the hand-checked table across the range") {
  const std::pair<double, long long> table[] = {
      {1.25, 1},     {1.5587, 1},   {3.7, 1},      {5.8416, 1},
      {6.0888, 1},   {6.336, 21},   {6.3767, 21},  {6.4174, 21},
      {7.1036, 21},  {7.7897, 21},  {8.0636, 61},  {8.3376, 61},
      {8.3482, 101}, {8.3589, 95},  {9.1289, 95},  {9.8989, 95},
      {10.1311, 105}, {10.3633, 115}, {11.0379, 115}, {11.7125, 115},
      {11.8143, 155}, {11.916, 155}, {11.9516, 155}, {11.9871, 155},
      {12.0, 155},   {15.0, 185},   {20.0, 185}};
  for (const auto& [theta, expected] : table) {
    CAPTURE(theta);
    const CensusReport r = enumerate(at(theta));
    CHECK(r.total == expected);
    CHECK_FALSE(r.partial);
    long long sum = 0;
    for (const auto& e : r.entries) sum += e.orbit_multiplicity;
    CHECK(sum == r.total);
  }
}

TEST_CASE("census class decompositions at representative thetas") {
  using Key = std::pair<CaseTag, int>;
  {
    const CensusReport r = enumerate(at(12.0));
    const std::map<Key, long long> want = {
        {{CaseTag::free_sol, 0}, 5},   {{CaseTag::sym_w1, 1}, 10},
        {{CaseTag::sym_w1, 2}, 20},    {{CaseTag::sym_wne1, 1}, 20},
        {{CaseTag::sym_wne1, 2}, 40},  {{CaseTag::asym_w1, 1}, 10},
        {{CaseTag::asym_w1, 2}, 20},   {{CaseTag::asym_wne1, 1}, 10},
        {{CaseTag::asym_wne1, 2}, 20}};
    CHECK(r.class_counts == want);
    CHECK(r.entries.size() == 15);
  }
  {
    const CensusReport r = enumerate(at(9.1289));
    const std::map<Key, long long> want = {
        {{CaseTag::free_sol, 0}, 5},  {{CaseTag::sym_wne1, 1}, 10},
        {{CaseTag::sym_wne1, 2}, 20}, {{CaseTag::asym_w1, 1}, 10},
        {{CaseTag::asym_w1, 2}, 20},  {{CaseTag::asym_wne1, 1}, 10},
        {{CaseTag::asym_wne1, 2}, 20}};
    CHECK(r.class_counts == want);
  }
  {
    const CensusReport r = enumerate(at(15.0));
    const std::map<Key, long long> want = {
        {{CaseTag::free_sol, 0}, 5},   {{CaseTag::sym_w1, 1}, 10},
        {{CaseTag::sym_w1, 2}, 20},    {{CaseTag::sym_wne1, 1}, 20},
        {{CaseTag::sym_wne1, 2}, 40},  {{CaseTag::asym_w1, 1}, 20},
        {{CaseTag::asym_w1, 2}, 40},   {{CaseTag::asym_wne1, 1}, 10},
        {{CaseTag::asym_wne1, 2}, 20}};
    CHECK(r.class_counts == want);
  }
}

TEST_CASE("census entries are sorted, verified, and deterministic") {
  const CensusReport r = enumerate(at(12.0));
  REQUIRE(r.entries.size() == 15);

  for (std::size_t i = 1; i < r.entries.size(); ++i) {
    const ReducedSolution& a = r.entries[i - 1].solution;
    const ReducedSolution& b = r.entries[i].solution;
    const auto key = [](const ReducedSolution& s) {
      return std::tuple(s.m, static_cast<int>(s.tag), s.branch, s.u);
    };
    CHECK(key(a) < key(b));
  }
  for (const auto& e : r.entries) {
    CAPTURE(e.solution.m);
    CAPTURE(to_string(e.solution.tag));
    CHECK(residual(e.solution, at(12.0)) < 1e-9);
    CHECK(e.orbit_multiplicity >= 1);
  }

  // First entry is the all-ones solution with multiplicity 1.
  CHECK(r.entries[0].solution.tag == CaseTag::free_sol);
  CHECK(r.entries[0].solution.branch == 0);
  CHECK(r.entries[0].orbit_multiplicity == 1);

  // The free branch values and the shared (z, 1, z) solutions carry the same
  // two z values; the shared entries appear in every sector.
  std::vector<double> free_w;
  for (const auto& e : r.entries)
    if (e.solution.tag == CaseTag::free_sol && e.solution.branch != 0)
      free_w.push_back(e.solution.w);
  REQUIRE(free_w.size() == 2);
  CHECK(free_w[0] == doctest::Approx(0.157241950497).epsilon(1e-9));
  CHECK(free_w[1] == doctest::Approx(6.359626021182).epsilon(1e-9));
  for (int m : {1, 2}) {
    const auto it = std::find_if(
        r.entries.begin(), r.entries.end(), [m](const CensusEntry& e) {
          return e.solution.tag == CaseTag::asym_wne1 && e.solution.m == m;
        });
    REQUIRE(it != r.entries.end());
    CHECK(it->solution.u == doctest::Approx(6.359626021182).epsilon(1e-9));
    CHECK(it->solution.v == 1.0);
    CHECK(it->solution.w == doctest::Approx(it->solution.u).epsilon(1e-12));
    CHECK(it->orbit_multiplicity == (m == 1 ? 10 : 20));
  }

  const CensusReport again = enumerate(at(12.0));
  REQUIRE(again.entries.size() == r.entries.size());
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    CHECK(again.entries[i].solution.u == r.entries[i].solution.u);
    CHECK(again.entries[i].solution.v == r.entries[i].solution.v);
    CHECK(again.entries[i].solution.w == r.entries[i].solution.w);
    CHECK(again.entries[i].orbit_multiplicity ==
          r.entries[i].orbit_multiplicity);
  }
}

TEST_CASE("row-swap orbits collapse to the representative with w >= 1") {
  for (double theta : {10.0, 12.0, 13.5}) {
    CAPTURE(theta);
    const CensusReport r = enumerate(at(theta));
    for (const auto& e : r.entries) {
      if (e.solution.tag != CaseTag::sym_wne1 &&
          e.solution.tag != CaseTag::asym_wne1)
        continue;
      CHECK(e.solution.w >= 1.0);
    }
  }
  // theta = 10, sector 2: the family has exactly one swap pair -> one entry.
  const CensusReport r = enumerate(at(10.0));
  int n_case2_m2 = 0;
  for (const auto& e : r.entries)
    if (e.solution.tag == CaseTag::sym_wne1 && e.solution.m == 2) ++n_case2_m2;
  CHECK(n_case2_m2 == 1);
  CHECK(r.class_counts.at({CaseTag::sym_wne1, 2}) == 20);
  CHECK(r.total == 105);
}

TEST_CASE("multiplicity equals the number of distinct boundary laws")
{
  // Brute-force audit at theta = 12: embed every entry on every color subset
  // in both row orders and count distinct laws.
  const ModelParams p = at(12.0);
  const CensusReport r = enumerate(p);
  LawPool global;
  for (const auto& e : r.entries) {
    CAPTURE(to_string(e.solution.tag));
    CAPTURE(e.solution.m);
    const auto laws = entry_laws(e, p);
    CHECK(static_cast<long long>(laws.size()) == e.orbit_multiplicity);
    for (const auto& law : laws) global.insert(law);
  }
  // The two free branches are each other's row-swap, so their two-element law
  // sets coincide: the global union is smaller than the total by exactly 2.
  CHECK(static_cast<long long>(global.laws.size()) == r.total - 2);
}

TEST_CASE("critical scan finds the full event list on (1, 14]") {
  const std::vector<CriticalValue> cvs =
      critical_scan(at(12.0), 1.0 + 1e-9, 14.0);
  const double expected[] = {1.558723041,  5.841606994,  6.335974696,
                             7.789751664,  8.337613748,  8.358898944,
                             9.898979486,  10.363285786, 11.712580691,
                             11.775614919, 11.916079783, 12.930001252,
                             13.930468935};
  REQUIRE(cvs.size() == 13);
  for (std::size_t i = 0; i < cvs.size(); ++i) {
    CAPTURE(i);
    CHECK(cvs[i].theta == doctest::Approx(expected[i]).epsilon(1e-6));
    CHECK(cvs[i].theta > 1.0);
    CHECK_FALSE(cvs[i].cluster.empty());
    CHECK(cvs[i].kind == cvs[i].cluster.front());
  }

  // Five analytically distinct mechanisms coincide at the branching point.
  const std::vector<std::string>& big = cvs[5].cluster;
  CHECK(big.size() == 5);
  for (const char* kind :
       {"free_branching", "sym_wne1_count m=1", "sym_wne1_count m=2",
        "asym_w1_tangency m=1", "asym_w1_tangency m=2"})
    CHECK(std::count(big.begin(), big.end(), kind) == 1);

  // Total raw events across clusters.
  std::size_t raw = 0;
  for (const auto& cv : cvs) raw += cv.cluster.size();
  CHECK(raw == 17);

  // Kind spot checks.
  CHECK(cvs[0].kind == "asym_wne1_reality m=2");
  CHECK(cvs[1].kind == "asym_wne1_reality m=1");
  CHECK(cvs[2].kind == "asym_w1_reality m=1");
  CHECK(cvs[3].kind == "asym_w1_reality m=2");
  CHECK(cvs[6].kind == "sym_w1_reality m=1");
  CHECK(cvs[8].kind == "sym_w1_reality m=2");
  CHECK(cvs[10].kind == "main_transition");
  CHECK(cvs[12].kind == "asym_w1_tangency m=1");
}

TEST_CASE("scan positions agree with the closed-form thresholds") {
  const std::vector<CriticalValue> cvs =
      critical_scan(at(12.0), 1.0 + 1e-9, 14.0);
  const CriticalValue* branching = find_kind(cvs, "free_branching");
  REQUIRE(branching != nullptr);
  // The cluster mean includes four coinciding events located independently,
  // so agreement is a genuine cross-check, not an identity.
  CHECK(branching->theta ==
        doctest::Approx(theta_c_free(2, 5)).epsilon(1e-7));
  const CriticalValue* main_cv = find_kind(cvs, "main_transition");
  REQUIRE(main_cv != nullptr);
  CHECK(main_cv->theta == doctest::Approx(theta_c_main(2, 5)).epsilon(1e-12));
  for (int m : {1, 2}) {
    const CriticalValue* cv =
        find_kind(cvs, "sym_w1_reality m=" + std::to_string(m));
    REQUIRE(cv != nullptr);
    CHECK(cv->theta == doctest::Approx(theta_c_sym(5, m)).epsilon(1e-10));
  }
}

TEST_CASE("census is constant between consecutive critical values") {
  const std::vector<CriticalValue> cvs =
      critical_scan(at(12.0), 1.0 + 1e-9, 12.1);
  REQUIRE(cvs.size() == 11);
  for (std::size_t i = 0; i + 1 < cvs.size(); ++i) {
    const double a = cvs[i].theta, b = cvs[i + 1].theta;
    if (b - a < 1e-4) continue;
    CAPTURE(a);
    CAPTURE(b);
    const long long left = enumerate(at(a + 1e-5)).total;
    const long long mid = enumerate(at(0.5 * (a + b))).total;
    const long long right = enumerate(at(b - 1e-5)).total;
    CHECK(left == mid);
    CHECK(mid == right);
  }
}

TEST_CASE("merge tolerance controls clustering") {
  const std::vector<CriticalValue> raw =
      critical_scan(at(12.0), 1.0 + 1e-9, 14.0, 0.0);
  CHECK(raw.size() >= 13);
  std::size_t raw_events = 0;
  for (const auto& cv : raw) raw_events += cv.cluster.size();
  CHECK(raw_events == 17);

  // A coarse tolerance merges neighbouring clusters but never loses events.
  const std::vector<CriticalValue> coarse =
      critical_scan(at(12.0), 1.0 + 1e-9, 14.0, 0.1);
  std::size_t coarse_events = 0;
  for (const auto& cv : coarse) coarse_events += cv.cluster.size();
  CHECK(coarse_events == 17);
  CHECK(coarse.size() <= 13);

  // Determinism.
  const std::vector<CriticalValue> again =
      critical_scan(at(12.0), 1.0 + 1e-9, 14.0, 0.0);
  REQUIRE(again.size() == raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    CHECK(again[i].theta == raw[i].theta);
    CHECK(again[i].kind == raw[i].kind);
  }
}

TEST_CASE("lower bounds reproduce the combinatorial values for q = 5") {
  const ModelParams p = at(12.0);
  using C = Coupling;
  using R = Regime;
  CHECK(lower_bound_counts(p, C::ferromagnetic, R::unique_phase) == 1);
  CHECK(lower_bound_counts(p, C::ferromagnetic, R::window, 0) == 3);
  CHECK(lower_bound_counts(p, C::ferromagnetic, R::window, 1) == 13);
  CHECK(lower_bound_counts(p, C::ferromagnetic, R::critical_sector, 1) == 8);
  CHECK(lower_bound_counts(p, C::ferromagnetic, R::critical_sector, 2) == 23);
  CHECK(lower_bound_counts(p, C::ferromagnetic, R::deep_cold) == 33);
  CHECK(lower_bound_counts(p, C::ferromagnetic, R::main_critical) == 18);
  CHECK(lower_bound_counts(p, C::antiferromagnetic, R::unique_phase) == 1);
  CHECK(lower_bound_counts(p, C::antiferromagnetic, R::window, 0) == 1);
  CHECK(lower_bound_counts(p, C::antiferromagnetic, R::window, 1) == 11);
  CHECK(lower_bound_counts(p, C::antiferromagnetic, R::critical_sector, 1) ==
        6);
  CHECK(lower_bound_counts(p, C::antiferromagnetic, R::critical_sector, 2) ==
        21);
  CHECK(lower_bound_counts(p, C::antiferromagnetic, R::deep_cold) == 31);
  CHECK(lower_bound_counts(p, C::antiferromagnetic, R::main_critical) == 16);

  CHECK_THROWS_AS(lower_bound_counts(p, C::ferromagnetic, R::window, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(lower_bound_counts(p, C::ferromagnetic, R::window, -1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      lower_bound_counts(p, C::ferromagnetic, R::critical_sector, 0),
      std::invalid_argument);
  ModelParams q4 = p;
  q4.q = 4;
  CHECK_THROWS_AS(lower_bound_counts(q4, C::ferromagnetic, R::main_critical),
                  std::invalid_argument);
}

TEST_CASE("census total dominates the applicable lower bound") {
  const double tc0 = theta_c_free(2, 5);
  const double tc1 = theta_c_sym(5, 1);
  const double tc2 = theta_c_sym(5, 2);
  const double tcr = theta_c_main(2, 5);
  int samples = 0;
  for (double theta = 2.0; theta <= 21.0; theta += 1.0) {
    CAPTURE(theta);
    Regime regime;
    int m = 0;
    if (theta < tc0) {
      regime = Regime::unique_phase;
    } else if (theta < tc1) {
      regime = Regime::window;
      m = 0;
    } else if (theta < tc2) {
      regime = Regime::window;
      m = 1;
    } else if (std::abs(theta - tcr) < 1e-9) {
      regime = Regime::main_critical;
    } else {
      regime = Regime::deep_cold;
    }
    const long long bound =
        lower_bound_counts(at(theta), Coupling::ferromagnetic, regime, m);
    const long long total = enumerate(at(theta)).total;
    CHECK(total >= bound);
    ++samples;
  }
  CHECK(samples == 20);
}

TEST_CASE("sector census for k >= 3 is flagged partial") {
  ModelParams p = at(12.0);
  p.k = 3;
  const CensusReport r = enumerate(p);
  CHECK(r.partial);
  long long sum = 0;
  for (const auto& e : r.entries) {
    CHECK((e.solution.tag == CaseTag::free_sol ||
           e.solution.tag == CaseTag::sym_w1));
    CHECK(residual(e.solution, p) < 1e-9);
    sum += e.orbit_multiplicity;
  }
  CHECK(sum == r.total);
  CHECK(r.total >= 5);  // all-ones plus two branched free laws
}

TEST_CASE("census and scan reject invalid arguments") {
  CHECK_THROWS_AS(enumerate(at(1.0)), std::invalid_argument);
  CHECK_THROWS_AS(enumerate(at(0.5)), std::invalid_argument);
  ModelParams bad_q = at(12.0);
  bad_q.q = 1;
  CHECK_THROWS_AS(enumerate(bad_q), std::invalid_argument);
  ModelParams bad_k = at(12.0);
  bad_k.k = 1;
  CHECK_THROWS_AS(enumerate(bad_k), std::invalid_argument);

  CHECK_THROWS_AS(critical_scan(at(12.0), 0.5, 14.0), std::invalid_argument);
  CHECK_THROWS_AS(critical_scan(at(12.0), 5.0, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(critical_scan(at(12.0), 2.0, 14.0, -1.0),
                  std::invalid_argument);
  ModelParams k3 = at(12.0);
  k3.k = 3;
  CHECK_THROWS_AS(critical_scan(k3, 2.0, 14.0), std::invalid_argument);
}

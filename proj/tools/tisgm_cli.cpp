// Command-line front end for the coupled Ising-Potts boundary-law toolkit:
// enumerate fixed points, sweep censuses over theta, locate critical values,
// and evaluate extremality tests, with JSON or CSV output.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gibbs/census.hpp"
#include "gibbs/chain.hpp"
#include "gibbs/extremality.hpp"
#include "gibbs/model.hpp"
#include "gibbs/solve.hpp"
#include "json.hpp"

namespace cli {
namespace {

using nlohmann::ordered_json;

// All floating-point output is fixed at 12 significant digits so identical
// configurations produce byte-identical files.
std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

struct Config {
  int k = 2;
  int q = 5;
  double theta = std::numeric_limits<double>::quiet_NaN();
  double theta_min = std::numeric_limits<double>::quiet_NaN();
  double theta_max = std::numeric_limits<double>::quiet_NaN();
  int steps = 1;
  int m_filter = -1;
  double tol = 1e-8;
  double merge_tol = 1e-3;
  std::string format = "json";
  std::string output;
  std::string measure = "free";
};

// Evenly spaced grid over [theta_min, theta_max] with `steps` points, or the
// single --theta value when given.  Returns nullopt after reporting a usage
// problem.
std::optional<std::vector<double>> theta_grid(const Config& c,
                                              double min_allowed,
                                              std::ostream& err) {
  std::vector<double> grid;
  const bool has_single = !std::isnan(c.theta);
  const bool has_range = !std::isnan(c.theta_min) || !std::isnan(c.theta_max);
  if (has_single && has_range) {
    err << "error: give either --theta or a --theta-min/--theta-max range\n";
    return std::nullopt;
  }
  if (has_single) {
    if (c.theta <= min_allowed) {
      err << "error: theta must exceed " << min_allowed << "\n";
      return std::nullopt;
    }
    grid.push_back(c.theta);
    return grid;
  }
  if (std::isnan(c.theta_min) || std::isnan(c.theta_max)) {
    err << "error: a theta range needs both --theta-min and --theta-max\n";
    return std::nullopt;
  }
  if (c.theta_min <= min_allowed || c.theta_max < c.theta_min ||
      c.steps < 1) {
    err << "error: range must satisfy " << min_allowed
        << " < theta-min <= theta-max and steps >= 1\n";
    return std::nullopt;
  }
  if (c.steps == 1) {
    grid.push_back(c.theta_min);
  } else {
    for (int i = 0; i < c.steps; ++i)
      grid.push_back(c.theta_min +
                     i * (c.theta_max - c.theta_min) / (c.steps - 1));
  }
  return grid;
}

int deliver(const Config& c, const std::string& text, std::ostream& out,
            std::ostream& err) {
  if (c.output.empty()) {
    out << text;
    return 0;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) {
    err << "error: cannot open output file " << c.output << "\n";
    return 1;
  }
  f << text;
  return 0;
}

int cmd_solve(const Config& c, std::ostream& out, std::ostream& err) {
  gibbs::ModelParams p;
  p.theta = c.theta;
  p.q = c.q;
  p.k = c.k;
  const gibbs::CensusReport rep = gibbs::enumerate(p);

  std::vector<gibbs::CensusEntry> entries;
  long long total = 0;
  double worst_residual = 0.0;
  for (const gibbs::CensusEntry& e : rep.entries) {
    if (c.m_filter >= 0 && e.solution.m != c.m_filter) continue;
    entries.push_back(e);
    total += e.orbit_multiplicity;
    worst_residual =
        std::max(worst_residual, gibbs::residual(e.solution, p));
  }
  if (worst_residual > c.tol) {
    err << "error: solution residual " << fmt12(worst_residual)
        << " exceeds tolerance " << fmt12(c.tol) << "\n";
    return 1;
  }

  std::string text;
  if (c.format == "json") {
    ordered_json doc;
    doc["command"] = "solve";
    doc["k"] = c.k;
    doc["q"] = c.q;
    doc["theta"] = round12(c.theta);
    doc["partial"] = rep.partial;
    doc["total"] = total;
    ordered_json sols = ordered_json::array();
    for (const gibbs::CensusEntry& e : entries) {
      ordered_json s;
      s["m"] = e.solution.m;
      s["case"] = gibbs::to_string(e.solution.tag);
      s["branch"] = e.solution.branch;
      s["u"] = round12(e.solution.u);
      s["v"] = round12(e.solution.v);
      s["w"] = round12(e.solution.w);
      s["double_root"] = e.solution.double_root;
      s["multiplicity"] = e.orbit_multiplicity;
      s["residual"] = round12(gibbs::residual(e.solution, p));
      sols.push_back(std::move(s));
    }
    doc["solutions"] = std::move(sols);
    text = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "theta,m,case_tag,branch,u,v,w,multiplicity,residual\n";
    for (const gibbs::CensusEntry& e : entries)
      os << fmt12(c.theta) << ',' << e.solution.m << ','
         << gibbs::to_string(e.solution.tag) << ',' << e.solution.branch << ','
         << fmt12(e.solution.u) << ',' << fmt12(e.solution.v) << ','
         << fmt12(e.solution.w) << ',' << e.orbit_multiplicity << ','
         << fmt12(gibbs::residual(e.solution, p)) << "\n";
    text = os.str();
  }
  return deliver(c, text, out, err);
}

int cmd_census(const Config& c, std::ostream& out, std::ostream& err) {
  const auto grid = theta_grid(c, 1.0, err);
  if (!grid) return 2;

  std::string text;
  if (c.format == "json") {
    ordered_json doc;
    doc["command"] = "census";
    doc["k"] = c.k;
    doc["q"] = c.q;
    ordered_json points = ordered_json::array();
    for (double theta : *grid) {
      gibbs::ModelParams p;
      p.theta = theta;
      p.q = c.q;
      p.k = c.k;
      const gibbs::CensusReport rep = gibbs::enumerate(p);
      ordered_json pt;
      pt["theta"] = round12(theta);
      pt["total"] = rep.total;
      pt["partial"] = rep.partial;
      ordered_json classes = ordered_json::array();
      for (const auto& [key, count] : rep.class_counts) {
        ordered_json cls;
        cls["case"] = gibbs::to_string(key.first);
        cls["m"] = key.second;
        cls["count"] = count;
        classes.push_back(std::move(cls));
      }
      pt["classes"] = std::move(classes);
      points.push_back(std::move(pt));
    }
    doc["points"] = std::move(points);
    text = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "theta,total,partial\n";
    for (double theta : *grid) {
      gibbs::ModelParams p;
      p.theta = theta;
      p.q = c.q;
      p.k = c.k;
      const gibbs::CensusReport rep = gibbs::enumerate(p);
      os << fmt12(theta) << ',' << rep.total << ',' << (rep.partial ? 1 : 0)
         << "\n";
    }
    text = os.str();
  }
  return deliver(c, text, out, err);
}

int cmd_critical(Config c, std::ostream& out, std::ostream& err) {
  if (std::isnan(c.theta_min)) c.theta_min = 1.0001;
  if (std::isnan(c.theta_max)) c.theta_max = 14.0;
  if (c.theta_min <= 1.0 || c.theta_max <= c.theta_min || c.merge_tol < 0.0) {
    err << "error: need 1 < theta-min < theta-max and merge-tol >= 0\n";
    return 2;
  }
  gibbs::ModelParams p;
  p.q = c.q;
  p.k = c.k;
  const std::vector<gibbs::CriticalValue> events =
      gibbs::critical_scan(p, c.theta_min, c.theta_max, c.merge_tol);

  std::string text;
  if (c.format == "json") {
    ordered_json doc;
    doc["command"] = "critical";
    doc["k"] = c.k;
    doc["q"] = c.q;
    doc["theta_min"] = round12(c.theta_min);
    doc["theta_max"] = round12(c.theta_max);
    doc["merge_tol"] = round12(c.merge_tol);
    ordered_json evs = ordered_json::array();
    for (const gibbs::CriticalValue& cv : events) {
      ordered_json e;
      e["theta"] = round12(cv.theta);
      e["kind"] = cv.kind;
      e["cluster"] = cv.cluster;
      evs.push_back(std::move(e));
    }
    doc["events"] = std::move(evs);
    text = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "theta,kind,cluster_size\n";
    for (const gibbs::CriticalValue& cv : events)
      os << fmt12(cv.theta) << ',' << cv.kind << ',' << cv.cluster.size()
         << "\n";
    text = os.str();
  }
  return deliver(c, text, out, err);
}

int cmd_extremality(const Config& c, std::ostream& out, std::ostream& err) {
  const auto grid = theta_grid(c, 0.0, err);
  if (!grid) return 2;
  gibbs::Measure m = gibbs::Measure::free_measure;
  if (c.measure == "branch_lower") m = gibbs::Measure::branch_lower;
  if (c.measure == "branch_upper") m = gibbs::Measure::branch_upper;

  struct Row {
    double theta = 0.0;
    bool present = false;
    gibbs::ExtremalityReport rep;
  };
  std::vector<Row> rows;
  for (double theta : *grid) {
    gibbs::ModelParams p;
    p.theta = theta;
    p.q = c.q;
    p.k = c.k;
    Row row;
    row.theta = theta;
    try {
      row.rep = gibbs::msw_check(m, p);
      row.present = true;
    } catch (const std::domain_error&) {
      row.present = false;  // branch measure absent at this theta
    }
    rows.push_back(row);
  }

  std::string text;
  if (c.format == "json") {
    ordered_json doc;
    doc["command"] = "extremality";
    doc["k"] = c.k;
    doc["q"] = c.q;
    doc["measure"] = c.measure;
    ordered_json out_rows = ordered_json::array();
    for (const Row& r : rows) {
      ordered_json j;
      j["theta"] = round12(r.theta);
      j["present"] = r.present;
      if (r.present) {
        j["w"] = round12(r.rep.w);
        j["kappa"] = round12(r.rep.kappa);
        j["gamma"] = round12(r.rep.gamma_bound);
        j["lambda2"] = round12(std::sqrt(r.rep.ks_statistic / c.k));
        j["ks_statistic"] = round12(r.rep.ks_statistic);
        j["product"] = round12(r.rep.product);
        j["msw_verdict"] = gibbs::to_string(r.rep.msw_verdict);
        j["ks_verdict"] = gibbs::to_string(r.rep.ks_verdict);
      }
      out_rows.push_back(std::move(j));
    }
    doc["rows"] = std::move(out_rows);
    text = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "theta,measure,present,w,kappa,gamma,lambda2,ks_statistic,product,"
          "msw_verdict,ks_verdict\n";
    for (const Row& r : rows) {
      os << fmt12(r.theta) << ',' << c.measure << ',' << (r.present ? 1 : 0)
         << ',';
      if (r.present)
        os << fmt12(r.rep.w) << ',' << fmt12(r.rep.kappa) << ','
           << fmt12(r.rep.gamma_bound) << ','
           << fmt12(std::sqrt(r.rep.ks_statistic / c.k)) << ','
           << fmt12(r.rep.ks_statistic) << ',' << fmt12(r.rep.product) << ','
           << gibbs::to_string(r.rep.msw_verdict) << ','
           << gibbs::to_string(r.rep.ks_verdict);
      else
        os << ",,,,,,,";
      os << "\n";
    }
    text = os.str();
  }
  return deliver(c, text, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Config c;
  if (const char* env = std::getenv("TISGM_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) {
      err << "error: TISGM_TOL must be a positive number\n";
      return 2;
    }
    c.tol = v;
  }

  CLI::App app{
      "Boundary-law toolkit for the coupled Ising-Potts model on Cayley "
      "trees"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--k", c.k, "branching number of the tree")
        ->check(CLI::Range(2, 16));
    sub->add_option("--q", c.q, "number of colors")->check(CLI::Range(2, 64));
    sub->add_option("--tol", c.tol, "residual verification tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", c.output, "write output to this file");
  };

  CLI::App* solve = app.add_subcommand(
      "solve", "enumerate boundary-law fixed points at one theta");
  add_common(solve);
  solve->add_option("--theta", c.theta, "coupling parameter exp(J beta)")
      ->required();
  solve->add_option("--m", c.m_filter, "restrict output to one sector size")
      ->check(CLI::NonNegativeNumber);

  CLI::App* census = app.add_subcommand(
      "census", "count measures over a theta grid");
  add_common(census);
  census->add_option("--theta", c.theta, "single theta");
  census->add_option("--theta-min", c.theta_min, "grid start");
  census->add_option("--theta-max", c.theta_max, "grid end");
  census->add_option("--steps", c.steps, "number of grid points");

  CLI::App* critical = app.add_subcommand(
      "critical", "locate critical theta values on an interval");
  add_common(critical);
  critical->add_option("--theta-min", c.theta_min,
                       "scan start (default 1.0001)");
  critical->add_option("--theta-max", c.theta_max, "scan end (default 14)");
  critical->add_option("--merge-tol", c.merge_tol,
                       "cluster events closer than this");

  CLI::App* extremality = app.add_subcommand(
      "extremality", "sufficient-extremality reports for a measure");
  add_common(extremality);
  extremality->add_option("--theta", c.theta, "single theta");
  extremality->add_option("--theta-min", c.theta_min, "grid start");
  extremality->add_option("--theta-max", c.theta_max, "grid end");
  extremality->add_option("--steps", c.steps, "number of grid points");
  extremality
      ->add_option("--measure", c.measure,
                   "free, branch_lower, or branch_upper")
      ->check(CLI::IsMember({"free", "branch_lower", "branch_upper"}));

  std::vector<std::string> full = {"tisgm"};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const std::string& s : full) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(solve)) {
      if (!(c.theta > 1.0)) {
        err << "error: theta must exceed 1\n";
        return 2;
      }
      return cmd_solve(c, out, err);
    }
    if (app.got_subcommand(census)) return cmd_census(c, out, err);
    if (app.got_subcommand(critical)) return cmd_critical(c, out, err);
    if (app.got_subcommand(extremality)) return cmd_extremality(c, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no command\n";
  return 2;
}

}  // namespace cli

#ifndef TISGM_CLI_NO_MAIN
int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli::run(args, std::cout, std::cerr);
}
#endif

// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "netput/dual.hpp"
#include "netput/error.hpp"
#include "netput/oracle.hpp"
#include "netput/primal.hpp"
#include "support.hpp"

using namespace netput;
using testing_support::Instance;
using testing_support::value;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  double worst = 0.0;
  int checks = 0;

  void note(bool ok, double err, const std::string& what) {
    ++checks;
    worst = std::max(worst, err);
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double dt = seconds_since(t0);
  if (!o.pass) ++failures;
  std::printf("%s %2d %s: %d checks, worst %.3g, %.2fs%s%s\n", o.pass ? "PASS" : "FAIL", id, title, o.checks, o.worst,
              dt, o.detail.empty() ? "" : " | ", o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

const std::vector<PParam> kOrderGrid = {
    PParam::neg_infinity(), PParam::finite(-2), PParam::finite(-1),  PParam::finite(-0.5),   PParam::finite(0),
    PParam::finite(0.5),    PParam::finite(1),  PParam::finite(2),   PParam::pos_infinity()};

Outcome example_two() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  auto t = testing_support::example_hrep();
  auto spec = UtilitySpec::pmean_plain(PParam::finite(0.5), {1, 1});
  double s = value(evaluate_utility(t, {-3, 2}, spec).score);
  o.note(std::abs(s - 1.0) <= 1e-6, std::abs(s - 1.0), fmt("primal %.10g", s));
  auto d = dual_value_utility(t, {-3, 2}, spec);
  double dv = value(d.dual_value);
  o.note(std::abs(dv - 1.0) <= 1e-6, std::abs(dv - 1.0), fmt("dual %.10g", dv));
  o.note(!d.attained, 0.0, "dual reported as attained");
  double dt = seconds_since(t0);
  o.note(dt < 1.0, 0.0, fmt("runtime %.3gs", dt));
  return o;
}

Outcome example_three() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  auto t = testing_support::example_hrep();
  auto spec = UtilitySpec::pmean_plain(PParam::finite(-0.5), {1, 1});
  double s = value(evaluate_utility(t, {-3, 2}, spec).score);
  o.note(std::abs(s) <= 1e-6, std::abs(s), fmt("primal %.10g", s));
  auto d = dual_value_utility(t, {-3, 2}, spec);
  o.note(d.attained, 0.0, "dual not attained");
  double werr = std::max(std::abs(d.w[0]), std::abs(d.w[1] - 1.0));
  o.note(werr <= 1e-6, werr, fmt("w = (%.6g, %.6g)", d.w[0], d.w[1]));
  o.note(d.gap <= 1e-6, d.gap, fmt("gap %.3g", d.gap));
  double dt = seconds_since(t0);
  o.note(dt < 1.0, 0.0, fmt("runtime %.3gs", dt));
  return o;
}

Outcome ordering() {
  Outcome o;
  std::mt19937_64 rng(301);
  const double tol = 1e-5 + 1e-6;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t d = 2 + trial % 3;
    std::size_t m = 1 + trial % (d - 1);
    std::size_t n = 2 + trial % 7;
    auto in = testing_support::random_instance(rng, d, m, n);
    if (d == 4) in.g[3] = 0.0;
    auto t = Technology::vrs_hull(in.points);
    Direction g(in.g);
    double prev = -INFINITY;
    for (const auto& p : kOrderGrid) {
      double s = value(evaluate_p(t, in.z, g, p).score);
      double drop = prev - s;
      o.note(drop <= tol, std::max(0.0, drop), "trial " + std::to_string(trial) + " drops at p = " + p.to_string());
      prev = s;
    }
  }
  return o;
}

Outcome limits() {
  Outcome o;
  std::mt19937_64 rng(401);
  // one input, one output, g at the scale of the data
  for (int trial = 0; trial < 100; ++trial) {
    auto in = testing_support::random_instance(rng, 2, 1, 3 + trial % 4);
    for (std::size_t k = 0; k < 2; ++k) {
      in.g[k] = 0.0;
      for (const auto& a : in.points) in.g[k] = std::max(in.g[k], std::abs(a[k]));
    }
    auto t = Technology::vrs_hull(in.points);
    Direction g(in.g);
    double D = value(directional_distance(t, in.z, g).score);
    double AD = value(asymmetric_distance(t, in.z, g).score);
    double lo = value(evaluate_p(t, in.z, g, PParam::finite(-50)).score);
    double hi = value(evaluate_p(t, in.z, g, PParam::finite(50)).score);
    double near0 = value(evaluate_p(t, in.z, g, PParam::finite(-0.05)).score);
    double zero = value(evaluate_p(t, in.z, g, PParam::finite(0)).score);
    std::string tag = "trial " + std::to_string(trial);
    o.note(std::abs(lo - D) <= 1e-2 * (1 + D), std::abs(lo - D) / (1 + D), tag + fmt(" D(-50) %.6g vs D %.6g", lo, D));
    o.note(std::abs(hi - AD) <= 1e-2 * (1 + AD), std::abs(hi - AD) / (1 + AD),
           tag + fmt(" D(50) %.6g vs AD %.6g", hi, AD));
    o.note(std::abs(near0 - zero) <= 1e-2 * (1 + zero), std::abs(near0 - zero) / (1 + zero),
           tag + fmt(" D(-0.05) %.6g vs D(0) %.6g", near0, zero));
  }
  return o;
}

Outcome input_identities() {
  Outcome o;
  std::mt19937_64 rng(501);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t m = 1 + trial % 2;
    std::size_t d = m + 1 + trial % 2;
    auto in = testing_support::random_instance(rng, d, m, 3 + trial % 5);
    auto t = Technology::vrs_hull(in.points);
    Vector x(in.z.begin(), in.z.begin() + m), y(in.z.begin() + m, in.z.end());
    Vector gv(d, 0.0);
    for (std::size_t k = 0; k < m; ++k) gv[k] = -x[k];
    Direction g(gv);
    std::string tag = "trial " + std::to_string(trial);

    double dfl = value(evaluate_p(t, in.z, g, PParam::finite(1)).score);
    double efl = value(fare_lovell_input(t, x, y));
    double e1 = std::abs(dfl - (1 - efl));
    o.note(e1 <= 1e-6, e1, tag + fmt(" D_FL %.10g vs 1 - E_FL %.10g", dfl, 1 - efl));

    double d50 = value(evaluate_p(t, in.z, g, PParam::finite(-50)).score);
    double edf = value(debreu_farrell(t, x, y));
    double e2 = std::abs(d50 - (1 - edf));
    o.note(e2 <= 1e-2, e2, tag + fmt(" D(-50) %.6g vs 1 - E_DF %.6g", d50, 1 - edf));
  }
  return o;
}

Outcome units_invariance() {
  Outcome o;
  std::mt19937_64 rng(601);
  std::uniform_real_distribution<double> L(0.1, 10.0);
  const std::vector<PParam> orders = {PParam::neg_infinity(), PParam::finite(-1), PParam::finite(0),
                                      PParam::finite(0.5),    PParam::finite(1),  PParam::finite(2),
                                      PParam::pos_infinity()};
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t d = 2 + trial % 2;
    auto in = testing_support::random_instance(rng, d, 1, 3 + trial % 4);
    auto t = Technology::vrs_hull(in.points);
    Vector l(d), lz(d), lg(d);
    for (std::size_t k = 0; k < d; ++k) {
      l[k] = L(rng);
      lz[k] = l[k] * in.z[k];
      lg[k] = l[k] * in.g[k];
    }
    auto ts = t.scaled(l);
    const PParam& p = orders[trial % orders.size()];
    double a = value(evaluate_p(t, in.z, Direction(in.g), p).score);
    double b = value(evaluate_p(ts, lz, Direction(lg), p).score);
    o.note(std::abs(a - b) <= 1e-6, std::abs(a - b),
           "trial " + std::to_string(trial) + " p = " + p.to_string() + fmt(": %.10g vs %.10g", a, b));
  }
  return o;
}

Outcome duality() {
  Outcome o;
  std::mt19937_64 rng(701);
  auto check = [&](const Technology& t, const Instance& in, PParam p, const std::string& tag) {
    Direction g(in.g);
    auto r = dual_value(t, in.z, g, p);
    o.note(r.gap <= 1e-4, r.gap, tag + " p = " + p.to_string() + fmt(" gap %.3g", r.gap));
    auto a = weak_duality_audit(t, in.z, g, p, 100, rng());
    o.note(a.worst_violation <= 1e-7, a.worst_violation,
           tag + " p = " + p.to_string() + fmt(" audit violation %.3g", a.worst_violation));
  };
  const std::vector<PParam> convex_only = {PParam::neg_infinity(), PParam::finite(-1), PParam::finite(0),
                                           PParam::finite(0.5)};
  const std::vector<PParam> both = {PParam::finite(1), PParam::finite(2), PParam::pos_infinity()};
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t d = 2 + trial % 2;
    std::string tag = "trial " + std::to_string(trial);
    auto in = testing_support::random_instance(rng, d, 1, 3 + trial % 5);
    auto vrs = Technology::vrs_hull(in.points);
    for (const auto& p : convex_only) check(vrs, in, p, tag + " vrs");
    for (const auto& p : both) check(vrs, in, p, tag + " vrs");
    auto fin = testing_support::random_fdh_instance(rng, d, 1, 3 + trial % 5);
    auto fdh = Technology::fdh(fin.points);
    for (const auto& p : both) check(fdh, fin, p, tag + " fdh");
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(801);
  const std::vector<PParam> orders = {PParam::finite(-1), PParam::finite(0), PParam::finite(0.5), PParam::finite(1),
                                      PParam::finite(2)};
  GridSpec gs;
  gs.resolution = 1001;
  for (int trial = 0; trial < 50; ++trial) {
    auto in = testing_support::random_instance(rng, 2, 1, 3 + trial % 5);
    auto t = Technology::vrs_hull(in.points);
    Direction g(in.g);
    const PParam& p = orders[trial % orders.size()];
    double s = value(evaluate_p(t, in.z, g, p).score);
    auto grid = grid_search(t, in.z, g, UtilitySpec::pmean_directional(p, g), gs);
    double lo = value(grid.lower_bound), hi = value(grid.upper_envelope);
    double err = std::max({0.0, lo - s, s - hi});
    o.note(err <= 1e-6, err,
           "trial " + std::to_string(trial) + " p = " + p.to_string() + fmt(": %.10g outside [lo %.10g, ", s, lo) +
               fmt("hi %.10g]", hi));
  }
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t d = 2 + trial % 3;
    auto in = testing_support::random_fdh_instance(rng, d, 1, 3 + trial % 6);
    auto t = Technology::fdh(in.points);
    Direction g(in.g);
    for (const auto& p : kOrderGrid) {
      double s = value(evaluate_p(t, in.z, g, p).score);
      double c = value(fdh_closed_form(in.points, in.z, g, p));
      double rel = std::abs(s - c) / std::max(1.0, std::abs(c));
      o.note(rel <= 1e-12, rel, "fdh trial " + std::to_string(trial) + " p = " + p.to_string() + fmt(": %.17g vs %.17g", s, c));
    }
  }
  return o;
}

Outcome budget_lines() {
  Outcome o;
  std::mt19937_64 rng(901);
  std::uniform_real_distribution<double> U(0.2, 3.0);
  const std::vector<double> orders = {-2, -1, -0.5, 0.5};
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t d = 2 + trial % 2;
    std::size_t res = d == 2 ? 10001 : 1001;
    Vector a(d), w(d);
    for (std::size_t k = 0; k < d; ++k) {
      a[k] = U(rng);
      w[k] = U(rng);
    }
    double c = U(rng);
    std::vector<std::pair<std::string, UtilitySpec>> specs;
    for (double p : orders) specs.emplace_back("p = " + fmt("%g", p), UtilitySpec::pmean_plain(PParam::finite(p), a));
    Vector t(d);
    double ts = 0.0;
    for (auto& x : t) ts += (x = U(rng));
    for (auto& x : t) x /= ts;
    specs.emplace_back("cobb-douglas", UtilitySpec::cobb_douglas(t, a));
    for (const auto& [name, spec] : specs) {
      double grid = budget_line_max(spec, w, c, res);
      double closed = value(indirect_utility(spec, w)) * c;
      double arg = budget_line_argmax(spec, w, c).value;
      double scale = std::max(1.0, std::abs(grid));
      double e1 = std::abs(closed - grid) / scale, e2 = std::abs(arg - grid) / scale;
      std::string tag = "trial " + std::to_string(trial) + " " + name;
      o.note(e1 <= 1e-3, e1, tag + fmt(": indirect %.8g vs grid %.8g", closed, grid));
      o.note(e2 <= 1e-3, e2, tag + fmt(": argmax %.8g vs grid %.8g", arg, grid));
    }
  }
  return o;
}

// Ground truth by pairwise comparison with the data points.
bool strictly_dominated(const std::vector<Vector>& pts, const Vector& z) {
  for (const auto& a : pts) {
    bool all = true;
    for (std::size_t k = 0; k < z.size(); ++k) all = all && a[k] > z[k];
    if (all) return true;
  }
  return false;
}

bool weakly_dominated(const std::vector<Vector>& pts, const Vector& z) {
  for (const auto& a : pts) {
    bool ge = true, gt = false;
    for (std::size_t k = 0; k < z.size(); ++k) {
      ge = ge && a[k] >= z[k];
      gt = gt || a[k] > z[k];
    }
    if (ge && gt) return true;
  }
  return false;
}

Outcome characterization() {
  Outcome o;
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int kinds[3] = {0, 0, 0};
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t d = 2 + trial % 3;
    auto pts = testing_support::random_points(rng, d, 1, 3 + trial % 6);
    auto t = Technology::fdh(pts);
    std::vector<std::size_t> all(d);
    for (std::size_t k = 0; k < d; ++k) all[k] = k;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      // the point itself, one coordinate worsened, every coordinate worsened
      for (int variant = 0; variant < 3; ++variant) {
        Vector z = pts[i];
        if (variant == 1) {
          std::size_t k = std::uniform_int_distribution<std::size_t>(0, d - 1)(rng);
          z[k] = k == 0 ? z[k] * (1.1 + U(rng)) : z[k] * (0.2 + 0.7 * U(rng));
        } else if (variant == 2) {
          for (std::size_t k = 0; k < d; ++k) z[k] = k == 0 ? z[k] * (1.1 + U(rng)) : z[k] * (0.2 + 0.7 * U(rng));
        }
        Vector gv(d);
        for (std::size_t k = 0; k < d; ++k) gv[k] = std::abs(z[k]);
        Direction g(gv);
        bool strong = !weakly_dominated(pts, z);
        bool weak = !strictly_dominated(pts, z);
        ++kinds[strong ? 0 : weak ? 1 : 2];
        double s1 = value(evaluate_p(t, z, g, PParam::finite(1)).score);
        double sd = value(directional_distance(t, z, g).score);
        std::string tag = "trial " + std::to_string(trial) + " unit " + std::to_string(i);
        o.note((s1 == 0.0) == strong, 0.0, tag + fmt(": D(1) = %.6g, efficient = %g", s1, strong));
        o.note((sd == 0.0) == weak, 0.0, tag + fmt(": D = %.6g, weakly efficient = %g", sd, weak));
        auto st = classify(t, z, all).kind;
        auto want = strong ? EfficiencyStatus::Kind::Efficient
                    : weak ? EfficiencyStatus::Kind::WeaklyEfficient
                           : EfficiencyStatus::Kind::Inefficient;
        o.note(st == want, 0.0, tag + " classified as " + efficiency_status_name(st));
      }
    }
  }
  o.note(kinds[0] > 0 && kinds[1] > 0 && kinds[2] > 0, 0.0, "a dominance class was never sampled");
  return o;
}

Outcome normalization_limit() {
  Outcome o;
  std::mt19937_64 rng(1101);
  std::uniform_real_distribution<double> U(0.05, 1.0);
  NormalizationRule dot{NormalizationRule::Kind::DotG}, lq{NormalizationRule::Kind::LqNorm, 1.001};
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t d = 1 + trial % 3;
    Vector gv(d), w(d);
    for (std::size_t k = 0; k < d; ++k) {
      gv[k] = U(rng);
      w[k] = U(rng);
    }
    Direction g(gv);
    double s = value(normalization_value(dot, g, w));
    for (auto& x : w) x /= s;
    double a = value(normalization_value(lq, g, w));
    double b = value(normalization_value(dot, g, w));
    o.note(std::abs(a - b) <= 1e-3, std::abs(a - b), "trial " + std::to_string(trial) + fmt(": %.8g vs %.8g", a, b));
  }
  return o;
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  report(1, "halfspace example, p = 1/2 utility", example_two);
  report(2, "halfspace example, p = -1/2 utility", example_three);
  report(3, "scores nondecreasing in p", ordering);
  report(4, "limits at p = -50, 50 and 0", limits);
  report(5, "input measure identities", input_identities);
  report(6, "units invariance", units_invariance);
  report(7, "duality gaps and weak duality", duality);
  report(8, "grid oracle sandwich and fdh closed form", oracle_equivalence);
  report(9, "budget line closed forms", budget_lines);
  report(10, "zero score characterizes efficiency", characterization);
  report(11, "lq normalization limit", normalization_limit);
  double total = seconds_since(t0);
  std::printf("total %.2fs, %d failed\n", total, failures);
  return failures == 0 && total < 60.0 ? 0 : 1;
}

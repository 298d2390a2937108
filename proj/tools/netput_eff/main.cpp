#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "io.hpp"
#include "netput/netput.h"

using eff::Cell;
using eff::Report;
using eff::UsageError;

namespace {

struct Options {
  std::string data;
  std::string tech = "vrs";
  std::string hrep;
  std::vector<std::string> ps;
  std::string direction = "observed";
  double tol = 1e-6;
  std::string format = "csv";
  std::string out;
  std::size_t m = 0, n = 0;
  std::size_t resolution = 201;
};

using TechPtr = std::unique_ptr<netput_technology, decltype(&netput_technology_destroy)>;

struct Context {
  eff::Dataset ds;
  TechPtr tech{nullptr, &netput_technology_destroy};
  bool fdh = false;
  std::vector<netput_p> ps;
  std::vector<std::string> p_labels;
  std::vector<std::vector<double>> dirs;
};

// Outcome flags shared by the worker threads.
struct Flags {
  std::atomic<bool> unsupported{false};
  std::atomic<bool> failed{false};
};

void check(netput_status st, const std::string& what) {
  if (st == NETPUT_OK) return;
  throw UsageError(what + ": " + netput_status_name(st) + ": " + netput_last_error());
}

std::string marker(netput_status st, Flags& flags) {
  if (st == NETPUT_ERR_UNSUPPORTED) {
    flags.unsupported = true;
    return "unsupported";
  }
  if (st == NETPUT_ERR_CONVEXITY_REQUIRED) return "convexity-required";
  flags.failed = true;
  return std::string("error:") + netput_status_name(st);
}

std::size_t thread_count(std::size_t work) {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NETPUT_EFF_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      throw UsageError(std::string("config error: NETPUT_EFF_THREADS must be a positive integer, got '") + env + "'");
    hw = std::min(hw, static_cast<std::size_t>(v));
  }
  return std::max<std::size_t>(1, std::min(hw, work));
}

// Runs fn(unit) on a pool; rows come back ordered by unit.
Report run_units(const Context& ctx, std::vector<std::string> columns,
                 const std::function<std::vector<std::vector<Cell>>(std::size_t)>& fn) {
  const std::size_t units = ctx.ds.ids.size();
  std::vector<std::vector<std::vector<Cell>>> per_unit(units);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < units;) {
      try {
        per_unit[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < thread_count(units); ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  Report r;
  r.columns = std::move(columns);
  for (auto& rows : per_unit)
    for (auto& row : rows) r.rows.push_back(std::move(row));
  return r;
}

std::vector<std::string> coord_columns(const Context& ctx, const std::string& prefix) {
  std::vector<std::string> out;
  for (const auto& c : ctx.ds.coords) out.push_back(prefix + c);
  return out;
}

void append(std::vector<std::string>& a, const std::vector<std::string>& b) { a.insert(a.end(), b.begin(), b.end()); }

void push_vector(std::vector<Cell>& row, const std::vector<double>& v) {
  for (double x : v) row.emplace_back(x);
}

void push_missing(std::vector<Cell>& row, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) row.emplace_back(std::monostate{});
}

Context prepare(const Options& o) {
  Context ctx;
  ctx.ds = eff::load_dataset(o.data, o.m, o.n);
  const std::size_t d = ctx.ds.dim();
  if (!(o.tol > 0.0)) throw UsageError("config error: --tol must be positive");

  std::string kind = o.tech, hrep_path = o.hrep;
  if (kind.rfind("hrep:", 0) == 0) {
    hrep_path = kind.substr(5);
    kind = "hrep";
  }
  netput_technology* raw = nullptr;
  if (kind == "vrs" || kind == "fdh") {
    std::vector<double> pts;
    for (const auto& z : ctx.ds.netputs) pts.insert(pts.end(), z.begin(), z.end());
    auto create = kind == "vrs" ? netput_technology_create_vrs : netput_technology_create_fdh;
    check(create(d, ctx.ds.ids.size(), pts.data(), &raw), "technology");
    ctx.fdh = kind == "fdh";
  } else if (kind == "hrep") {
    if (hrep_path.empty()) throw UsageError("config error: --tech hrep needs --hrep <path>");
    auto hs = eff::load_hrep(hrep_path, d);
    check(netput_technology_create_hrep(d, hs.rhs.size(), hs.normals.data(), hs.rhs.data(), &raw), "technology");
  } else {
    throw UsageError("config error: unknown technology '" + o.tech + "'");
  }
  ctx.tech.reset(raw);

  std::vector<std::string> ps = o.ps.empty() ? std::vector<std::string>{"1"} : o.ps;
  for (const auto& tok : ps) {
    netput_p p;
    if (netput_p_parse(tok.c_str(), &p) != NETPUT_OK)
      throw UsageError("config error: bad order '" + tok + "': " + netput_last_error());
    char buf[64];
    check(netput_p_format(p, buf, sizeof buf), "order");
    ctx.ps.push_back(p);
    ctx.p_labels.push_back(buf);
  }

  if (o.direction == "observed") {
    for (std::size_t i = 0; i < ctx.ds.ids.size(); ++i) {
      std::vector<double> g;
      bool zero = false;
      for (double v : ctx.ds.netputs[i]) {
        g.push_back(std::abs(v));
        zero = zero || v == 0.0;
      }
      if (zero)
        std::cerr << "warning: unit " << ctx.ds.ids[i]
                  << ": zero components of the observation are left out of the direction\n";
      ctx.dirs.push_back(std::move(g));
    }
  } else if (o.direction == "unit") {
    ctx.dirs.assign(ctx.ds.ids.size(), std::vector<double>(d, 1.0));
  } else if (o.direction.rfind("custom:", 0) == 0) {
    ctx.dirs = eff::load_directions(o.direction.substr(7), d, ctx.ds.ids.size());
  } else {
    throw UsageError("config error: unknown direction '" + o.direction + "'");
  }
  return ctx;
}

Report cmd_eval(const Context& ctx, Flags& flags) {
  const std::size_t d = ctx.ds.dim();
  std::vector<std::string> cols{"id", "p", "score", "status", "method"};
  append(cols, coord_columns(ctx, "delta_"));
  append(cols, coord_columns(ctx, "proj_"));
  return run_units(ctx, cols, [&](std::size_t i) {
    std::vector<std::vector<Cell>> rows;
    for (std::size_t j = 0; j < ctx.ps.size(); ++j) {
      netput_eval_info info{};
      std::vector<double> delta(d), proj(d);
      netput_status st = netput_evaluate_p(ctx.tech.get(), ctx.ds.netputs[i].data(), ctx.dirs[i].data(), ctx.ps[j],
                                           &info, delta.data(), proj.data());
      std::vector<Cell> row{ctx.ds.ids[i], ctx.p_labels[j]};
      if (st == NETPUT_OK) {
        row.emplace_back(info.score);
        row.emplace_back(std::string(netput_efficiency_name(info.status)));
        row.emplace_back(std::string(info.method));
        push_vector(row, delta);
        push_vector(row, proj);
      } else {
        row.emplace_back(std::monostate{});
        row.emplace_back(marker(st, flags));
        row.emplace_back(std::monostate{});
        push_missing(row, 2 * d);
      }
      rows.push_back(std::move(row));
    }
    return rows;
  });
}

Report cmd_dual(const Context& ctx, double tol, Flags& flags) {
  const std::size_t d = ctx.ds.dim();
  std::vector<std::string> cols{"id",         "p",        "criterion", "normalization", "score", "status",
                                "dual_value", "dual_gap", "gap_ok",    "attained",      "residual"};
  append(cols, coord_columns(ctx, "w_"));
  return run_units(ctx, cols, [&](std::size_t i) {
    std::vector<std::vector<Cell>> rows;
    for (std::size_t j = 0; j < ctx.ps.size(); ++j) {
      netput_criterion crit{};
      netput_normalization norm{};
      int convex = 0;
      check(netput_dual_regime(ctx.ps[j], &crit, &norm, &convex), "order");
      std::vector<Cell> row{ctx.ds.ids[i], ctx.p_labels[j], std::string(netput_criterion_name(crit)),
                            std::string(netput_normalization_name(norm))};
      netput_dual_info info{};
      std::vector<double> w(d);
      netput_status st = ctx.fdh && convex ? NETPUT_ERR_CONVEXITY_REQUIRED
                                           : netput_dual_value(ctx.tech.get(), ctx.ds.netputs[i].data(),
                                                               ctx.dirs[i].data(), ctx.ps[j], &info, w.data());
      if (st == NETPUT_OK) {
        row.emplace_back(info.primal_value);
        row.emplace_back(std::string("ok"));
        row.emplace_back(info.dual_value);
        row.emplace_back(info.gap);
        row.emplace_back(info.gap <= tol);
        row.emplace_back(info.attained != 0);
        row.emplace_back(info.normalization_residual);
        push_vector(row, w);
      } else {
        row.emplace_back(std::monostate{});
        row.emplace_back(marker(st, flags));
        push_missing(row, 5 + d);
      }
      rows.push_back(std::move(row));
    }
    return rows;
  });
}

Report cmd_classify(const Context& ctx, double tol, Flags& flags) {
  const std::size_t d = ctx.ds.dim();
  std::vector<std::string> cols{"id", "status", "witness", "score_directional", "score_fare_lovell", "consistent"};
  return run_units(ctx, cols, [&](std::size_t i) {
    const auto& z = ctx.ds.netputs[i];
    const auto& g = ctx.dirs[i];
    std::vector<std::size_t> ks;
    for (std::size_t k = 0; k < d; ++k)
      if (g[k] > 0.0) ks.push_back(k);
    std::vector<Cell> row{ctx.ds.ids[i]};
    netput_efficiency eff{};
    std::vector<unsigned char> mask(d, 0);
    netput_eval_info dir{}, fl{};
    netput_status st = netput_classify(ctx.tech.get(), z.data(), ks.data(), ks.size(), &eff, mask.data());
    if (st == NETPUT_OK) st = netput_directional_distance(ctx.tech.get(), z.data(), g.data(), &dir, nullptr, nullptr);
    if (st == NETPUT_OK)
      st = netput_evaluate_p(ctx.tech.get(), z.data(), g.data(), netput_p{NETPUT_P_FINITE, 1.0}, &fl, nullptr,
                             nullptr);
    if (st != NETPUT_OK) {
      row.emplace_back(marker(st, flags));
      push_missing(row, 4);
      return std::vector<std::vector<Cell>>{row};
    }
    std::string witness;
    for (std::size_t k = 0; k < d; ++k)
      if (mask[k]) witness += (witness.empty() ? "" : ";") + ctx.ds.coords[k];
    bool consistent = true;
    if (eff != NETPUT_INFEASIBLE && !ks.empty()) {
      bool efficient = eff == NETPUT_EFFICIENT;
      bool weak = efficient || eff == NETPUT_WEAKLY_EFFICIENT;
      consistent = (std::abs(fl.score) <= tol) == efficient && (std::abs(dir.score) <= tol) == weak;
    }
    if (!consistent) flags.failed = true;
    row.emplace_back(std::string(netput_efficiency_name(eff)));
    row.emplace_back(witness);
    row.emplace_back(dir.score);
    row.emplace_back(fl.score);
    row.emplace_back(consistent);
    return std::vector<std::vector<Cell>>{row};
  });
}

Report cmd_oracle(const Context& ctx, double tol, std::size_t resolution, Flags& flags) {
  const std::size_t d = ctx.ds.dim();
  std::vector<double> pts;
  for (const auto& z : ctx.ds.netputs) pts.insert(pts.end(), z.begin(), z.end());
  std::vector<std::string> cols{"id", "p", "score", "grid_lower", "grid_upper", "closed_form", "agrees"};
  return run_units(ctx, cols, [&](std::size_t i) {
    std::vector<std::vector<Cell>> rows;
    const auto& z = ctx.ds.netputs[i];
    const auto& g = ctx.dirs[i];
    for (std::size_t j = 0; j < ctx.ps.size(); ++j) {
      std::vector<Cell> row{ctx.ds.ids[i], ctx.p_labels[j]};
      netput_eval_info info{};
      netput_utility u{NETPUT_UTILITY_PMEAN_DIRECTIONAL, ctx.ps[j], nullptr, nullptr, g.data(), 1};
      double lo = 0.0, hi = 0.0;
      netput_status st = netput_evaluate_p(ctx.tech.get(), z.data(), g.data(), ctx.ps[j], &info, nullptr, nullptr);
      if (st == NETPUT_OK)
        st = netput_grid_search(ctx.tech.get(), z.data(), g.data(), &u, resolution, &lo, &hi, nullptr);
      if (st != NETPUT_OK) {
        row.emplace_back(std::monostate{});
        row.emplace_back(marker(st, flags));
        push_missing(row, 4);
        rows.push_back(std::move(row));
        continue;
      }
      bool agrees = (std::isinf(info.score) && info.score == lo) ||
                    (info.score >= lo - tol * (1 + std::abs(lo)) && info.score <= hi + tol * (1 + std::abs(hi)));
      row.emplace_back(info.score);
      row.emplace_back(lo);
      row.emplace_back(hi);
      if (ctx.fdh) {
        double cf = 0.0;
        check(netput_fdh_closed_form(d, ctx.ds.ids.size(), pts.data(), z.data(), g.data(), ctx.ps[j], &cf),
              "closed form");
        row.emplace_back(cf);
        agrees = agrees && (cf == info.score || std::abs(cf - info.score) <= tol * (1 + std::abs(cf)));
      } else {
        row.emplace_back(std::monostate{});
      }
      if (!agrees) flags.failed = true;
      row.emplace_back(agrees);
      rows.push_back(std::move(row));
    }
    return rows;
  });
}

void add_common(CLI::App* sub, Options& o, bool with_p) {
  sub->add_option("data", o.data, "dataset CSV (id,x1..xm,y1..yn)")->required()->check(CLI::ExistingFile);
  sub->add_option("--inputs", o.m, "number of input columns")->required();
  sub->add_option("--outputs", o.n, "number of output columns")->required();
  sub->add_option("--tech", o.tech, "vrs, fdh, hrep or hrep:<path>");
  sub->add_option("--hrep", o.hrep, "halfspace file, one 'a1 ... ad <= b' per line");
  if (with_p) sub->add_option("--p", o.ps, "order of the mean: -inf, a real, or inf (repeatable)");
  sub->add_option("--direction", o.direction, "observed, unit or custom:<path>");
  sub->add_option("--tol", o.tol, "tolerance for zero scores and duality gaps");
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out, "write the report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized directional efficiency scores for production data"};
  app.require_subcommand(1);
  Options o;
  auto* eval = app.add_subcommand("eval", "primal scores for every unit and order");
  auto* dual = app.add_subcommand("dual", "dual prices and duality gaps");
  auto* classify = app.add_subcommand("classify", "efficiency status on the direction support");
  auto* oracle = app.add_subcommand("oracle", "compare scores with the grid oracle");
  oracle->group("");
  add_common(eval, o, true);
  add_common(dual, o, true);
  add_common(classify, o, false);
  add_common(oracle, o, true);
  oracle->add_option("--resolution", o.resolution, "grid points per axis");

  // Allow "--p -inf" as well as "--p=-inf".
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == "--p" && args[i + 1].rfind("-", 0) == 0) {
      args[i] = "--p=" + args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    Context ctx = prepare(o);
    Flags flags;
    Report report;
    if (*eval) report = cmd_eval(ctx, flags);
    else if (*dual) report = cmd_dual(ctx, o.tol, flags);
    else if (*classify) report = cmd_classify(ctx, o.tol, flags);
    else report = cmd_oracle(ctx, o.tol, o.resolution, flags);

    std::ofstream file;
    if (!o.out.empty()) {
      file.open(o.out);
      if (!file) throw UsageError("cannot write " + o.out);
    }
    std::ostream& os = o.out.empty() ? std::cout : file;
    if (o.format == "json") eff::write_json(report, os);
    else eff::write_csv(report, os);
    os.flush();
    if (flags.unsupported) return 2;
    if (flags.failed) return 1;
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "netput-eff: " << e.what() << '\n';
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "netput-eff: " << e.what() << '\n';
    return 1;
  }
}

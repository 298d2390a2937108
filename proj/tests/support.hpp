#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "netput/dual.hpp"
#include "netput/oracle.hpp"
#include "netput/primal.hpp"

namespace testing_support {

using netput::Vector;

// T = {x1 <= 0, x1 + x2 <= 0, x2 <= 2}
inline netput::Technology example_hrep() {
  return netput::Technology::hrep({{{1.0, 0.0}, 0.0}, {{1.0, 1.0}, 0.0}, {{0.0, 1.0}, 2.0}});
}

inline netput::Technology two_point_fdh() { return netput::Technology::fdh({{-2.0, 2.0}, {-4.0, 5.0}}); }

inline double value(const netput::ExtReal& r) { return r.to_double(); }

inline bool close(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol;
}

// Observed production plans with m inputs and the remaining d - m outputs.
struct Instance {
  std::vector<Vector> points;
  Vector z;
  Vector g;
};

inline std::vector<Vector> random_points(std::mt19937_64& rng, std::size_t d, std::size_t m, std::size_t n) {
  std::uniform_real_distribution<double> U(0.5, 5.0);
  std::vector<Vector> pts(n, Vector(d));
  for (auto& p : pts)
    for (std::size_t k = 0; k < d; ++k) p[k] = k < m ? -U(rng) : U(rng);
  return pts;
}

// A point inside the hull: a convex combination shrunk towards less output
// and more input.
inline Vector interior_point(std::mt19937_64& rng, const std::vector<Vector>& pts, std::size_t m) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  Vector lam(pts.size());
  double s = 0.0;
  for (double& l : lam) s += (l = U(rng) + 1e-3);
  Vector z(pts[0].size(), 0.0);
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t k = 0; k < z.size(); ++k) z[k] += lam[a] / s * pts[a][k];
  for (std::size_t k = 0; k < z.size(); ++k) z[k] = k < m ? z[k] * (1.0 + 0.3 * U(rng)) : z[k] * (0.6 + 0.35 * U(rng));
  return z;
}

// A point dominated by one randomly chosen observation, hence in every hull.
inline Vector dominated_point(std::mt19937_64& rng, const std::vector<Vector>& pts, std::size_t m) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  Vector z = pts[std::uniform_int_distribution<std::size_t>(0, pts.size() - 1)(rng)];
  for (std::size_t k = 0; k < z.size(); ++k) z[k] = k < m ? z[k] * (1.0 + 0.5 * U(rng)) : z[k] * (0.4 + 0.55 * U(rng));
  return z;
}

inline Instance random_fdh_instance(std::mt19937_64& rng, std::size_t d, std::size_t m, std::size_t n_points) {
  Instance in;
  in.points = random_points(rng, d, m, n_points);
  in.z = dominated_point(rng, in.points, m);
  in.g.resize(d);
  for (std::size_t k = 0; k < d; ++k) in.g[k] = std::abs(in.z[k]);
  return in;
}

inline Instance random_instance(std::mt19937_64& rng, std::size_t d, std::size_t m, std::size_t n_points) {
  Instance in;
  in.points = random_points(rng, d, m, n_points);
  in.z = interior_point(rng, in.points, m);
  in.g.resize(d);
  for (std::size_t k = 0; k < d; ++k) in.g[k] = std::abs(in.z[k]);
  return in;
}

}  // namespace testing_support

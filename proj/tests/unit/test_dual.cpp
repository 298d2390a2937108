#include <random>

#include "doctest.h"
#include "netput/dual.hpp"
#include "netput/error.hpp"
#include "support.hpp"

using namespace netput;
using testing_support::example_hrep;
using testing_support::two_point_fdh;
using testing_support::value;

TEST_SUITE("dual") {

TEST_CASE("normalization values") {
  Direction g({1, 1});
  Vector w{0.5, 0.5};
  CHECK(value(normalization_value({NormalizationRule::Kind::DotG}, g, w)) == doctest::Approx(1.0));
  CHECK(value(normalization_value({NormalizationRule::Kind::MaxWeighted}, g, w)) == doctest::Approx(1.0));
  CHECK(value(normalization_value({NormalizationRule::Kind::GeoMean}, g, w)) == doctest::Approx(1.0));
  CHECK(value(normalization_value({NormalizationRule::Kind::LqNorm, 2.0}, g, w)) == doctest::Approx(1.0));
  CHECK(value(normalization_value({NormalizationRule::Kind::PhiQ, -1.0}, g, w)) == doctest::Approx(1.0));
}

TEST_CASE("lq normalization approaches the linear one") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(0.1, 1.0);
  for (int i = 0; i < 30; ++i) {
    Direction g({U(rng), U(rng), U(rng)});
    Vector w{U(rng), U(rng), U(rng)};
    double dot = value(normalization_value({NormalizationRule::Kind::DotG}, g, w));
    for (auto& x : w) x /= dot;
    double lq = value(normalization_value({NormalizationRule::Kind::LqNorm, 1.001}, g, w));
    CHECK(std::abs(lq - 1.0) <= 1e-3);
  }
}

TEST_CASE("regimes") {
  CHECK(dual_regime(PParam::neg_infinity()).criterion == DualCriterion::Minimization);
  CHECK(dual_regime(PParam::finite(0.0)).normalization == NormalizationRule::Kind::GeoMean);
  CHECK(dual_regime(PParam::finite(1.0)).normalization == NormalizationRule::Kind::MaxWeighted);
  CHECK_FALSE(dual_regime(PParam::finite(2.0)).convexity_required);
  CHECK(NormalizationRule::for_order(PParam::finite(0.5)).q == doctest::Approx(-1.0));
}

TEST_CASE("utility duals of the halfspace example") {
  auto t = example_hrep();
  auto neg = dual_value_utility(t, {-3, 2}, UtilitySpec::pmean_plain(PParam::finite(-0.5), {1, 1}));
  CHECK(value(neg.dual_value) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(neg.attained);
  CHECK(neg.w[0] == doctest::Approx(0.0));
  CHECK(neg.w[1] == doctest::Approx(1.0));
  CHECK(neg.gap <= 1e-6);

  auto half = dual_value_utility(t, {-3, 2}, UtilitySpec::pmean_plain(PParam::finite(0.5), {1, 1}));
  CHECK(value(half.dual_value) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_FALSE(half.attained);
  CHECK(half.gap <= 1e-6);
  CHECK_THROWS_AS(dual_value_utility(t, {-3, 2}, UtilitySpec::pmean_plain(PParam::finite(2.0), {1, 1})), Error);
}

TEST_CASE("directional regimes of the halfspace example") {
  auto t = example_hrep();
  Direction g({1, 1});
  auto dir = dual_value(t, {-3, 2}, g, PParam::neg_infinity());
  CHECK(value(dir.dual_value) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(value(dir.dual_value) == doctest::Approx(value(directional_distance(t, {-3, 2}, g).score)));
  CHECK(dir.normalization_residual <= 1e-9);

  auto fl = dual_value(t, {-3, 2}, g, PParam::finite(1.0));
  CHECK(value(fl.dual_value) == doctest::Approx(0.5));
  CHECK(fl.gap <= 1e-9);
  CHECK(fl.w[0] == doctest::Approx(0.5));
  CHECK(fl.w[1] == doctest::Approx(0.5));

  for (double p : {-1.0, 0.0, 0.5, 2.0}) {
    auto r = dual_value(t, {-3, 1}, g, PParam::finite(p));
    CHECK(r.gap <= 1e-6);
    CHECK(r.normalization_residual <= 1e-7);
  }
  auto inf = dual_value(t, {-3, 1}, g, PParam::pos_infinity());
  CHECK(inf.gap <= 1e-9);
  CHECK(inf.normalization_residual <= 1e-7);
}

TEST_CASE("convexity requirement") {
  Direction g({1, 1});
  CHECK_THROWS_AS(dual_value(two_point_fdh(), {-4, 2}, g, PParam::finite(0.0)), Error);
  auto r = dual_value(two_point_fdh(), {-4, 2}, g, PParam::finite(1.0));
  CHECK(value(r.dual_value) == doctest::Approx(1.5));
  CHECK(r.gap <= 1e-9);
}

TEST_CASE("norm duality") {
  auto l1 = norm_dual_value(example_hrep(), {-3, 2}, PParam::finite(1.0), Direction({1, 1}));
  CHECK(value(l1.primal_value) == doctest::Approx(1.0));
  CHECK(value(l1.dual_value) == doctest::Approx(1.0));
  CHECK(l1.w[0] == doctest::Approx(1.0));
  CHECK(l1.w[1] == doctest::Approx(1.0));

  auto linf = norm_dual_value(two_point_fdh(), {-4, 2}, PParam::pos_infinity(), Direction({1, 1}));
  CHECK(value(linf.primal_value) == doctest::Approx(3.0));
  CHECK(value(linf.dual_value) == doctest::Approx(3.0));
  CHECK(linf.w[1] == doctest::Approx(1.0));

  auto self = norm_dual_value(example_hrep(), {-2, 2}, PParam::finite(2.0), Direction({1, 1}));
  CHECK(value(self.primal_value) == doctest::Approx(0.0));
  CHECK(value(self.dual_value) == doctest::Approx(0.0));
}

TEST_CASE("weak duality audits") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    auto in = testing_support::random_fdh_instance(rng, 3, 1, 5);
    auto vrs = Technology::vrs_hull(in.points);
    auto fdh = Technology::fdh(in.points);
    Direction g(in.g);
    CHECK(weak_duality_audit(vrs, in.z, g, PParam::neg_infinity(), 100).worst_violation <= 1e-7);
    CHECK(weak_duality_audit(vrs, in.z, g, PParam::finite(0.5), 100).worst_violation <= 1e-7);
    CHECK(weak_duality_audit(fdh, in.z, g, PParam::finite(1.0), 100).worst_violation <= 1e-7);
    CHECK(weak_duality_audit(fdh, in.z, g, PParam::pos_infinity(), 100).worst_violation <= 1e-7);
  }
  auto single = weak_duality_audit(example_hrep(), {-3, 1}, Direction({0, 1}), PParam::finite(1.0), 20);
  CHECK(single.worst_violation == doctest::Approx(0.0));
  CHECK(single.samples == 20);
}

}

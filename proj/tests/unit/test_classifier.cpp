#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "triage/classifier.hpp"
#include "triage/errors.hpp"
#include "triage/normal.hpp"

using namespace triage;

namespace {

// Reference (a, b) per finding, solved with an independent probit oracle.
constexpr std::array<std::array<double, 2>, kFindingCount> kFits = {{
    {2.409206570412, 0.908191135121},
    {2.466233854445, 1.162929699972},
    {2.187834139044, 0.673321188026},
    {2.221043719651, 0.940238051650},
    {1.924172661399, 1.000000000000},
    {2.862470035800, 1.330197562721},
    {1.221062349413, 0.727112383472},
    {1.127368095876, 0.670150321923},
}};

} // namespace

TEST_CASE("normal cdf and quantile agree") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-14));
  for (double p : {1e-12, 1e-6, 0.001, 0.05, 0.3, 0.5, 0.7, 0.95, 0.999,
                   1 - 1e-9}) {
    CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK(std::isinf(normal_quantile(0.0)));
  CHECK(std::isinf(normal_quantile(1.0)));
}

TEST_CASE("built-in operating points") {
  const auto lo = OperatingPoint::low_fpr();
  CHECK(lo.of(Finding::Pneumothorax).tpr == 0.82);
  CHECK(lo.of(Finding::Mass).tpr == 0.51);
  for (const auto &r : lo.rates)
    CHECK(r.fpr == 0.05);
  const auto hi = OperatingPoint::low_fnr();
  CHECK(hi.of(Finding::Pneumothorax).fpr == 0.20);
  CHECK(hi.of(Finding::ForeignObject).fpr == 0.78);
  for (const auto &r : hi.rates) {
    CHECK(r.tpr == 0.95);
    CHECK(r.fnr() == doctest::Approx(0.05));
  }
  CHECK(builtin_operating_point("perfect").tag == OperatingPoint::Tag::Perfect);
  CHECK_THROWS_AS(builtin_operating_point("medium"), ConfigError);
}

TEST_CASE("perfect classifier reproduces the truth") {
  RandomStream rng(1);
  const auto op = OperatingPoint::perfect();
  for (int bits = 0; bits < 256; ++bits) {
    const auto s = FindingSet::from_bits(static_cast<std::uint8_t>(bits));
    CHECK(classify(s, op, rng) == s);
  }
}

TEST_CASE("confusion frequencies at 1e5 trials") {
  constexpr int n = 100'000;
  RandomStream rng(2024);
  int detected = 0, alarms = 0;
  for (int i = 0; i < n; ++i) {
    detected += classify({Finding::Pneumothorax}, OperatingPoint::low_fpr(), rng)
                    .contains(Finding::Pneumothorax);
    alarms += classify({}, OperatingPoint::low_fnr(), rng)
                  .contains(Finding::Pneumothorax);
  }
  CHECK(std::abs(detected / double(n) - 0.82) < 0.01);
  CHECK(std::abs(alarms / double(n) - 0.20) < 0.01);
}

TEST_CASE("binormal fit through the pneumothorax anchors") {
  const auto c = fit_binormal({0.05, 0.82}, {0.20, 0.95});
  CHECK(c.intercept == doctest::Approx(2.409206570412232).epsilon(1e-12));
  CHECK(c.slope == doctest::Approx(0.908191135121283).epsilon(1e-12));
  CHECK(std::abs(c.tpr_at(0.05) - 0.82) < 1e-9);
  CHECK(std::abs(c.tpr_at(0.20) - 0.95) < 1e-9);
  CHECK(std::abs(c.tpr_at(0.5) - 0.992006376897421) < 1e-12);
  CHECK(c.tpr_at(0.0) == 0.0);
  CHECK(c.tpr_at(1.0) == 1.0);

  const std::array<std::pair<double, double>, 8> grid = {{
      {0.01, 0.6165522161752117},
      {0.02, 0.706782709788277},
      {0.1, 0.8934916036877797},
      {0.4, 0.9853385845830978},
      {0.7, 0.9980458046936711},
      {0.9, 0.9998236102494691},
      {1e-6, 0.028207808209416863},
      {1 - 1e-6, 0.9999999999912939},
  }};
  for (auto [fpr, tpr] : grid)
    CHECK(std::abs(c.tpr_at(fpr) - tpr) < 1e-10);
}

TEST_CASE("every fitted curve matches the oracle and its anchors") {
  const auto roc = BinormalRoc::from_builtin_points();
  for (Finding f : kAllFindings) {
    const auto &c = roc.of(f);
    CHECK(c.intercept == doctest::Approx(kFits[index_of(f)][0]).epsilon(1e-10));
    CHECK(c.slope == doctest::Approx(kFits[index_of(f)][1]).epsilon(1e-10));
    CHECK(c.slope > 0.0);
    for (const auto &anchor : roc.anchors[index_of(f)])
      CHECK(std::abs(c.tpr_at(anchor.fpr) - anchor.tpr) < 1e-9);
  }
}

TEST_CASE("degenerate anchors") {
  const auto chance = fit_binormal({0.3, 0.3}, {0.6, 0.6});
  CHECK(std::abs(chance.intercept) < 1e-12);
  CHECK(chance.slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_binormal({0.1, 0.5}, {0.1, 0.7}), DegenerateAnchors);
  CHECK_THROWS_AS(fit_binormal({0.1, 0.7}, {0.2, 0.6}), DegenerateAnchors);
  CHECK_THROWS_AS(fit_binormal({0.0, 0.5}, {0.2, 0.6}), DegenerateAnchors);
}

TEST_CASE("operating points along the curves") {
  const auto roc = BinormalRoc::from_builtin_points();
  const auto at05 = operating_point_at_fpr(roc, 0.05);
  CHECK(at05.tag == OperatingPoint::Tag::Custom);
  CHECK(at05.of(Finding::Pneumothorax).tpr == doctest::Approx(0.82));
  CHECK(at05.of(Finding::Mass).tpr == doctest::Approx(0.51));
  const auto none = operating_point_at_fpr(roc, 0.0);
  const auto all = operating_point_at_fpr(roc, 1.0);
  for (Finding f : kAllFindings) {
    CHECK(none.of(f).tpr == 0.0);
    CHECK(all.of(f).tpr == 1.0);
  }
  std::array<double, kFindingCount> per{};
  per.fill(0.05);
  per[1] = 0.24;
  const auto mixed = operating_point_at_fpr(roc, per);
  CHECK(mixed.of(Finding::Pneumothorax).tpr == doctest::Approx(0.82));
  CHECK(mixed.of(Finding::Congestion).tpr == doctest::Approx(0.95));
  CHECK_THROWS_AS(operating_point_at_fpr(roc, 1.5), ConfigError);
}

TEST_CASE("operating point files") {
  testutil::TempDir dir;
  const auto op = load_operating_point(
      dir.write("op.csv", "finding,tpr,fpr\npneumothorax,0.9,0.1\n"));
  CHECK(op.tag == OperatingPoint::Tag::Custom);
  CHECK(op.of(Finding::Pneumothorax).tpr == 0.9);
  CHECK(op.of(Finding::Mass).tpr == 0.51);
  CHECK_THROWS_AS(load_operating_point(dir.path() / "none.csv"), MissingFile);
  CHECK_THROWS_AS(
      load_operating_point(dir.write("b.csv", "finding,tpr,fpr\nmass,2,0\n")),
      DataError);
  CHECK_THROWS_AS(
      load_operating_point(dir.write("c.csv", "finding,tpr\nmass,0.5\n")),
      DataError);
}

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "hlmax/integrate.hpp"

using namespace hlmax;

namespace {

QuadratureSpec tight() { return QuadratureSpec{}; }

double mass_of(const Measure& mu, const Ball& b, QuadratureSpec q = tight()) { return ball_mass(mu, b, q).to_double(); }

Ball interval(double a, double b) { return make_ball(make_point((a + b) / 2), (b - a) / 2, MetricKind::Euclidean); }

}  // namespace

TEST(Metric, ThreeFourFive) {
  const Ball b = make_ball(make_point(0.0, 0.0), 5.0, MetricKind::Euclidean);
  EXPECT_FALSE(ball_contains(b, make_point(3.0, 4.0)));  // boundary is excluded
  EXPECT_TRUE(ball_contains(make_ball(make_point(0.0, 0.0), 5.000001, MetricKind::Euclidean), make_point(3.0, 4.0)));
}

TEST(Metric, SupremumBallIsOpenSquare) {
  const Ball b = make_ball(lattice_point(0, 0), 2.0, MetricKind::Supremum);
  EXPECT_TRUE(ball_contains(b, lattice_point(1, -1)));
  EXPECT_FALSE(ball_contains(b, lattice_point(2, 0)));
  EXPECT_EQ(lattice_sites_in_ball(b, bounding_window(b)).size(), 9u);
}

TEST(Metric, RejectsNonpositiveRadius) {
  EXPECT_THROW(make_ball(make_point(0.0), 0.0, MetricKind::Euclidean), Error);
}

TEST(Lattice, ShiftedSquareSkipsAxisColumn) {
  // B_N(N,0) in the sup metric covers n = 1..2N-1 and |m| <= N-1
  for (int N = 1; N <= 8; ++N) {
    const Ball b = make_ball(lattice_point(N, 0), static_cast<double>(N), MetricKind::Supremum);
    const auto sites = lattice_sites_in_ball(b, bounding_window(b));
    EXPECT_EQ(sites.size(), static_cast<std::size_t>((2 * N - 1) * (2 * N - 1)));
    for (const Site& s : sites) EXPECT_GT(s.n, 0);
  }
}

TEST(Lattice, CanonicalRadiiAreLossless) {
  const auto radii = canonical_lattice_radii(MetricKind::Supremum, 2, 4);
  ASSERT_FALSE(radii.empty());
  EXPECT_DOUBLE_EQ(radii.front(), 0.5);
  for (double r = 0.3; r < 4; r += 0.37) {
    const Ball raw = make_ball(lattice_point(0, 0), r, MetricKind::Supremum);
    const Ball up = make_ball(lattice_point(0, 0), std::ceil(r), MetricKind::Supremum);
    EXPECT_EQ(lattice_sites_in_ball(raw, bounding_window(raw)), lattice_sites_in_ball(up, bounding_window(up)));
  }
}

TEST(Numeric, ExactArithmeticStaysExact) {
  const Quantity a = Quantity::exact(Rational(1, 3));
  const Quantity b = Quantity::exact(Rational(1, 6));
  const Quantity s = a + b;
  ASSERT_TRUE(s.is_exact());
  EXPECT_EQ(*s.exact(), Rational(1, 2));
  EXPECT_TRUE((a * b).is_exact());
  EXPECT_EQ(*(a / b).exact(), Rational(2));
}

TEST(Numeric, LogQuantitiesCompareAcrossForms) {
  const Quantity big = Quantity::exact(pow2(900 * 900));
  EXPECT_NEAR(big.log(), 810000 * std::log(2.0), 1e-6);
  EXPECT_TRUE(big.as_log() > Quantity::exact(pow2(1000)));
  EXPECT_TRUE(Quantity::from_log(-1) < Quantity::one());
  EXPECT_TRUE(Quantity::zero().is_zero());
}

TEST(Numeric, LogSumIsStable) {
  LogSum s;
  s.add(1000);
  s.add(1000);
  EXPECT_NEAR(s.value(), 1000 + std::log(2.0), 1e-12);
  EXPECT_DOUBLE_EQ(log_add(kLogZero, 3.0), 3.0);
}

TEST(Numeric, ParseQuantity) {
  EXPECT_EQ(*parse_quantity("0.125").exact(), Rational(1, 8));
  const Quantity l = parse_quantity("log:700");
  EXPECT_FALSE(l.is_exact());
  EXPECT_DOUBLE_EQ(l.log(), 700);
  EXPECT_THROW(parse_quantity("abc"), Error);
}

TEST(WeightsCsv, ReadsTwoDimensionalTable) {
  std::istringstream in("n,m,weight\n0,0,2\n1,0,log:3\n");
  const DiscreteWeights w = read_lattice_weights_csv(in);
  EXPECT_EQ(w.dim, 2);
  EXPECT_EQ(*w.weight(Site{0, 0}).exact(), Rational(2));
  EXPECT_DOUBLE_EQ(w.weight(Site{1, 0}).log(), 3);
  EXPECT_EQ(*w.weight(Site{5, 5}).exact(), Rational(1));
}

TEST(WeightsCsv, RejectsBadInput) {
  std::istringstream header("a,b\n");
  EXPECT_THROW(read_lattice_weights_csv(header), Error);
  std::istringstream zero("n,weight\n0,0\n");
  try {
    read_lattice_weights_csv(zero);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonpositiveMass);
  }
  std::istringstream dup("n,weight\n1,1\n1,2\n");
  EXPECT_THROW(read_lattice_weights_csv(dup), Error);
}

TEST(BallMass, Ex3SquareAroundOrigin) {
  const Quantity m = ball_mass(Measure::ex3(), make_ball(lattice_point(0, 0), 2.0, MetricKind::Supremum), tight());
  ASSERT_TRUE(m.is_exact());
  EXPECT_EQ(*m.exact(), Rational(15));
}

TEST(BallMass, EmptyLatticeBallIsAnError) {
  try {
    ball_mass(Measure::lattice(2), make_ball(make_point(0.5, 0.5), 0.3, MetricKind::Euclidean), tight());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyBall);
  }
}

TEST(BallMass, GaussMinusMatchesErf) {
  EXPECT_NEAR(mass_of(Measure::gauss_minus(), interval(-3, 3)), 1.77241469651904, 1e-12);
}

TEST(BallMass, GaussPlusLargeRadiusNeedsBothEnds) {
  // the integrand peaks at both endpoints; the left one must not be missed
  const QuadratureSpec q = tight().with_log_domain();
  const Measure mu = Measure::gauss_plus();
  const double full = ball_mass(mu, interval(-64, 64), q).log();
  const double right = ball_mass(mu, interval(0, 64), q).log();
  EXPECT_NEAR(full - right, std::log(2.0), 1e-9);
}

TEST(BallMass, LogAndLinearDomainsAgree) {
  const Measure mu = Measure::weighted(1, DensityPreset::GaussPlus, false);
  for (double r : {0.5, 1.0, 2.5, 4.0, 6.0}) {
    for (double c : {-1.0, 0.0, 2.0}) {
      const Ball b = make_ball(make_point(c), r, MetricKind::Euclidean);
      const double lin = ball_mass(mu, b, tight()).log();
      const double lg = ball_mass(mu, b, tight().with_log_domain()).log();
      EXPECT_NEAR(lin, lg, 1e-9 * std::max(1.0, std::abs(lin))) << "c=" << c << " r=" << r;
    }
  }
}

TEST(BallMass, HalvingTolerancePreservesMass) {
  const Measure mu = Measure::gauss_minus(2);
  QuadratureSpec q = tight();
  for (double r : {0.5, 1.0, 2.0}) {
    const Ball b = make_ball(make_point(0.3, -0.2), r, MetricKind::Euclidean);
    const double a = mass_of(mu, b, q);
    QuadratureSpec h = q;
    h.rel_tol /= 2;
    EXPECT_LT(std::abs(mass_of(mu, b, h) - a), q.rel_tol * a);
  }
}

TEST(BallMass, DiskAreaAndSquareArea) {
  const Measure leb = Measure::weighted(2, DensityPreset::Unit);
  EXPECT_NEAR(mass_of(leb, make_ball(make_point(0.2, 0.7), 1.5, MetricKind::Euclidean)), M_PI * 2.25, 1e-9);
  EXPECT_NEAR(mass_of(leb, make_ball(make_point(0.2, 0.7), 1.5, MetricKind::Supremum)), 9.0, 1e-9);
}

TEST(BallMass, MixedIsSumOfComponents) {
  const Measure mixed = Measure::segment_plus_plane();
  const Measure plane = Measure::weighted(2, DensityPreset::Unit);
  for (double r : {0.1, 0.4, 0.8}) {
    const Ball b = make_ball(make_point(0.5, 0.05), r, MetricKind::Euclidean);
    const double chord = 2 * std::sqrt(std::max(0.0, r * r - 0.0025));
    const double seg = std::min(chord, 1.0);  // the segment has length 1
    EXPECT_NEAR(mass_of(mixed, b), mass_of(plane, b) + seg, 1e-12);
  }
}

TEST(BallMass, DimensionMismatchThrows) {
  try {
    ball_mass(Measure::ex3(), make_ball(lattice_point(0), 1.0, MetricKind::Supremum), tight());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Quadrature, ValidatesSpec) {
  QuadratureSpec q;
  q.rel_tol = 0;
  EXPECT_THROW(q.validate(), Error);
  q = QuadratureSpec{};
  q.max_depth = 2;
  const Measure mu = Measure::gauss_plus();
  EXPECT_THROW(ball_mass(mu, interval(-30, 30), q.with_log_domain()), Error);
}

TEST(Quadrature, LinearDomainOverflowIsReported) {
  const Measure mu = Measure::weighted(1, DensityPreset::GaussPlus, false);
  try {
    ball_mass(mu, interval(-40, 40), tight());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::QuadratureNonconvergence);
  }
}

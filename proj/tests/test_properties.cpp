#include <gtest/gtest.h>

#include "property_checks.hpp"

using namespace hlmax::props;

namespace {
constexpr int kInstances = 200;
}

TEST(Properties, TruncationIsMonotone) { EXPECT_EQ(truncation_monotone(kInstances), ""); }

TEST(Properties, CenteredNeverExceedsNoncentered) { EXPECT_EQ(centered_dominated(kInstances), ""); }

TEST(Properties, PositiveHomogeneity) { EXPECT_EQ(homogeneous(kInstances), ""); }

TEST(Properties, Subadditivity) { EXPECT_EQ(subadditive(kInstances), ""); }

TEST(Properties, ConstantIsFixed) { EXPECT_EQ(constant_fixed(kInstances), ""); }

TEST(Properties, SingletonLowerBound) { EXPECT_EQ(singleton_bound(kInstances), ""); }

#include <algorithm>
#include <limits>
#include <string>

#include "doctest.h"
#include "memeflow/energy.hpp"
#include "memeflow/errors.hpp"

using namespace memeflow;

TEST_CASE("activation energy sums every degree of freedom") {
  CHECK(activation_energy({}) == 0.0);
  CHECK(activation_energy({{{"c1", {1.0, 2.0, 0.5}}}}) == 3.5);

  // two carbon-like constituents, four unit-cost valences each
  ConstituentSet carbonish{{{"a", {1, 1, 1, 1}}, {"b", {1, 1, 1, 1}}}};
  CHECK(activation_energy(carbonish) == 8.0);

  // empty dof list is a valid constituent
  CHECK(activation_energy({{{"inert", {}}}}) == 0.0);
}

TEST_CASE("activation energy rejects bad costs naming the constituent") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();

  CHECK_THROWS_WITH_AS(activation_energy({{{"x1", {1.0, nan}}}}),
                       doctest::Contains("x1"), ValidationError);
  CHECK_THROWS_WITH_AS(activation_energy({{{"x2", {-0.5}}}}),
                       doctest::Contains("x2"), ValidationError);
  CHECK_THROWS_WITH_AS(activation_energy({{{"x3", {inf}}}}),
                       doctest::Contains("x3"), ValidationError);
  CHECK_THROWS_AS(activation_energy({{{"dup", {1.0}}, {"dup", {2.0}}}}), ValidationError);
}

TEST_CASE("activation energy is additive and order-insensitive") {
  ConstituentSet s1{{{"a", {1.0, 0.5}}, {"b", {2.0}}}};
  ConstituentSet s2{{{"c", {0.25, 0.25}}, {"d", {}}}};
  ConstituentSet joined{{s1.constituents[0], s1.constituents[1], s2.constituents[0],
                         s2.constituents[1]}};
  CHECK(activation_energy(joined) ==
        doctest::Approx(activation_energy(s1) + activation_energy(s2)).epsilon(1e-15));

  ConstituentSet shuffled{{s2.constituents[1], s1.constituents[1], s2.constituents[0],
                           s1.constituents[0]}};
  CHECK(activation_energy(shuffled) == activation_energy(joined));

  // dof order inside a constituent does not matter either
  ConstituentSet flipped{{{"a", {0.5, 1.0}}, {"b", {2.0}}}};
  CHECK(activation_energy(flipped) == activation_energy(s1));
}

TEST_CASE("delta energy") {
  CHECK(delta_energy({2.0, 5.0}) == 3.0);
  CHECK(delta_energy({0.0, 0.0}) == 0.0);
  CHECK_THROWS_AS(delta_energy({5.0, 2.0}), ValidationError);
  CHECK_THROWS_AS(delta_energy({-1.0, 2.0}), ValidationError);
  CHECK_THROWS_AS(delta_energy({0.0, std::numeric_limits<double>::infinity()}),
                  ValidationError);
}

TEST_CASE("delta energy composes with activation energy") {
  // hand sums: S1 = (1 + 2) + 0.5 = 3.5, S2 = (2 + 2) + (1 + 0.25) = 5.25
  ConstituentSet s1{{{"c1", {1.0, 2.0}}, {"c2", {0.5}}}};
  ConstituentSet s2{{{"c1", {2.0, 2.0}}, {"c2", {1.0, 0.25}}}};
  const EnergyLevels levels{activation_energy(s1), activation_energy(s2)};
  CHECK(levels.resting == 3.5);
  CHECK(levels.activation == 5.25);
  CHECK(delta_energy(levels) == 1.75);
}

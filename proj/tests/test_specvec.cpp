#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "locc/errors.hpp"
#include "locc/prob_vector.hpp"
#include "test_util.hpp"

using namespace locc;
using locc::testing::random_majorizing_pair;
using locc::testing::random_prob_vector;

TEST_CASE("ProbVector validation") {
  CHECK_NOTHROW(ProbVector({0.5, 0.5}));
  CHECK_THROWS_AS(ProbVector({0.5, 0.6}), InvalidVector);
  CHECK_THROWS_AS(ProbVector({1.2, -0.2}), InvalidVector);
  // Entries below the zero threshold are clamped.
  const ProbVector p({1.0, 1e-14, -1e-13});
  CHECK(p[1] == 0.0);
  CHECK(p[2] == 0.0);
}

TEST_CASE("majorizes on known pairs") {
  // The incomparable three-level spectra.
  const ProbVector x({0.5, 0.4, 0.1});
  const ProbVector y({0.6, 0.2, 0.2});
  CHECK_FALSE(majorizes(x, y));
  CHECK_FALSE(majorizes(y, x));

  // Reflexivity on an explicit pair.
  const ProbVector r({0.3, 0.7});
  CHECK(majorizes(r, r));

  // Partial sums 1/3 <= 0.5, 2/3 <= 0.75, 1 = 1.
  CHECK(majorizes(ProbVector({1.0 / 3, 1.0 / 3, 1.0 / 3}),
                  ProbVector({0.5, 0.25, 0.25})));
}

TEST_CASE("majorizes pads shorter vectors with zeros") {
  CHECK(majorizes(ProbVector({0.5, 0.3, 0.2}), ProbVector({0.6, 0.4})));
  CHECK_FALSE(majorizes(ProbVector({0.6, 0.4}), ProbVector({0.5, 0.3, 0.2})));
}

TEST_CASE("compare classifies all four relations") {
  CHECK(compare(ProbVector({0.5, 0.4, 0.1}), ProbVector({0.6, 0.2, 0.2})) ==
        Comparison::Incomparable);
  CHECK(compare(ProbVector({0.5, 0.5}), ProbVector({0.7, 0.3})) ==
        Comparison::LeftPrecedes);
  CHECK(compare(ProbVector({0.7, 0.3}), ProbVector({0.5, 0.5})) ==
        Comparison::RightPrecedes);
  CHECK(compare(ProbVector({0.4, 0.6}), ProbVector({0.6, 0.4})) ==
        Comparison::Equivalent);
}

TEST_CASE("apply_t_transform basics") {
  const ProbVector v({0.7, 0.3});
  CHECK(apply_t_transform(v, {0, 1, 1.0}).entries() ==
        std::vector<double>{0.7, 0.3});
  CHECK(apply_t_transform(v, {0, 1, 0.0}).entries() ==
        std::vector<double>{0.3, 0.7});
  const ProbVector mid = apply_t_transform(v, {0, 1, 0.5});
  CHECK(mid[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mid[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(apply_t_transform(v, {0, 5, 0.5}), IndexOutOfRange);
}

TEST_CASE("decompose_t_transforms on known pairs") {
  const auto chain =
      decompose_t_transforms(ProbVector({0.5, 0.5}), ProbVector({0.7, 0.3}));
  REQUIRE(chain.size() == 1);
  CHECK(chain[0].i == 0);
  CHECK(chain[0].j == 1);
  CHECK(chain[0].t == doctest::Approx(0.5).epsilon(1e-12));

  CHECK(decompose_t_transforms(ProbVector({0.4, 0.6}), ProbVector({0.6, 0.4}))
            .empty());

  const ProbVector x({0.4, 0.35, 0.25});
  const ProbVector y({0.6, 0.3, 0.1});
  const auto c2 = decompose_t_transforms(x, y);
  CHECK(c2.size() <= 2);
  ProbVector cur = y;
  for (const auto& t : c2) cur = apply_t_transform(cur, t);
  const auto xs = x.sorted_desc();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(cur[i] == doctest::Approx(xs[i]).epsilon(1e-10));
  }

  CHECK_THROWS_AS(
      decompose_t_transforms(ProbVector({0.7, 0.3}), ProbVector({0.5, 0.5})),
      NotMajorized);
}

TEST_CASE("crossing_statistic on known pairs") {
  const auto rep = crossing_statistic(ProbVector({0.5, 0.4, 0.1}),
                                      ProbVector({0.6, 0.2, 0.2}));
  CHECK(rep.partial_sums[0] == doctest::Approx(-0.1).epsilon(1e-12));
  CHECK(rep.partial_sums[1] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(std::abs(rep.partial_sums[2]) < 1e-10);
  CHECK(rep.crosses);
  CHECK(rep.first_negative_k == 0);
  CHECK(rep.first_positive_k == 1);

  const ProbVector p({0.25, 0.25, 0.5});
  const auto same = crossing_statistic(p, p);
  CHECK_FALSE(same.crosses);
  for (double t : same.partial_sums) CHECK(std::abs(t) < 1e-12);

  const auto ordered =
      crossing_statistic(ProbVector({0.5, 0.5}), ProbVector({0.7, 0.3}));
  CHECK_FALSE(ordered.crosses);
  for (double t : ordered.partial_sums) CHECK(t <= 1e-12);
}

TEST_CASE("reflexivity, uniform minimality, point-mass maximality") {
  CounterRng rng(11);
  for (int it = 0; it < 2000; ++it) {
    const std::size_t d = 2 + rng.next_u64() % 7;
    const ProbVector v = random_prob_vector(d, rng);
    CHECK(majorizes(v, v));
    std::vector<double> uni(d, 1.0 / d);
    CHECK(majorizes(ProbVector(uni), v));
    std::vector<double> point(d, 0.0);
    point[0] = 1.0;
    CHECK(majorizes(v, ProbVector(point)));
  }
}

TEST_CASE("transitivity on random triples") {
  CounterRng rng(12);
  const auto mix_down = [&](const ProbVector& v) {
    // Random T-transforms give a doubly stochastic image, hence a vector
    // majorized by v.
    ProbVector out = v;
    for (int mix = 0; mix < 2; ++mix) {
      const std::size_t i = rng.next_u64() % v.size();
      std::size_t j = rng.next_u64() % v.size();
      if (i == j) j = (j + 1) % v.size();
      out = apply_t_transform(out, {i, j, 0.3 + 0.4 * rng.uniform01()});
    }
    return out;
  };
  for (int it = 0; it < 10000; ++it) {
    const std::size_t d = 2 + rng.next_u64() % 7;
    const ProbVector z = random_prob_vector(d, rng);
    const ProbVector y = mix_down(z);
    const ProbVector x = mix_down(y);
    REQUIRE(majorizes(x, y));
    REQUIRE(majorizes(y, z));
    CHECK(majorizes(x, z));
  }
}

TEST_CASE("decomposition soundness on random majorizing pairs") {
  CounterRng rng(13);
  for (int it = 0; it < 10000; ++it) {
    const std::size_t d = 2 + rng.next_u64() % 9;
    auto [x, y] = random_majorizing_pair(d, rng);
    const auto chain = decompose_t_transforms(x, y);
    CHECK(chain.size() <= d - 1);
    ProbVector cur(y.sorted_desc());
    for (const auto& t : chain) cur = apply_t_transform(cur, t);
    const auto xs = x.sorted_desc();
    double err = 0.0;
    for (std::size_t i = 0; i < d; ++i) err = std::max(err, std::abs(cur[i] - xs[i]));
    CHECK(err <= 1e-10);
  }
}

TEST_CASE("crossing equivalence with compare") {
  CounterRng rng(14);
  for (int it = 0; it < 10000; ++it) {
    const std::size_t d = 2 + rng.next_u64() % 7;
    const ProbVector p = random_prob_vector(d, rng);
    const ProbVector q = random_prob_vector(d, rng);
    const bool crosses = crossing_statistic(p, q).crosses;
    CHECK(crosses == (compare(p, q) == Comparison::Incomparable));
  }
}

TEST_CASE("two-outcome vectors are always comparable") {
  CounterRng rng(15);
  for (int it = 0; it < 2000; ++it) {
    const ProbVector p = random_prob_vector(2, rng);
    const ProbVector q = random_prob_vector(2, rng);
    CHECK(compare(p, q) != Comparison::Incomparable);
  }
}

#include <doctest.h>

#include <random>

#include "hhcarbon/error.hpp"
#include "hhcarbon/inequality.hpp"
#include "oracles.hpp"

using namespace hhcarbon;

TEST_CASE("gini fixed points") {
  std::vector<double> eq{1, 1, 1, 1}, single{0, 0, 0, 1}, ramp{1, 2, 3, 4};
  CHECK(gini(eq) == doctest::Approx(0.0));
  CHECK(gini(single) == doctest::Approx(0.75));
  CHECK(oracle::gini_pairwise(ramp) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(std::abs(gini(ramp) - oracle::gini_pairwise(ramp)) < 1e-10);

  auto l = lorenz(eq);
  REQUIRE(l.points.size() == 5);
  for (const auto& [p, s] : l.points) CHECK(s == doctest::Approx(p));
}

TEST_CASE("lorenz shape") {
  std::vector<double> v{5, 0, 3, 9, 1};
  auto l = lorenz(v);
  CHECK(l.points.front() == std::pair{0.0, 0.0});
  CHECK(l.points.back() == std::pair{1.0, 1.0});
  double area = 0;
  for (std::size_t k = 1; k < l.points.size(); ++k) {
    CHECK(l.points[k].second >= l.points[k - 1].second);
    CHECK(l.points[k].second <= l.points[k].first + 1e-15);
    area += (l.points[k].first - l.points[k - 1].first) * (l.points[k].second + l.points[k - 1].second) / 2;
  }
  CHECK(l.gini == doctest::Approx(1 - 2 * area).epsilon(1e-12));
}

TEST_CASE("tail shares") {
  std::vector<double> v{3, 1, 4, 10, 5, 9, 2, 6, 8, 7};
  CHECK(tail_share(v, 0.1, Tail::Top) == doctest::Approx(10.0 / 55));
  CHECK(tail_share(v, 0.1, Tail::Bottom) == doctest::Approx(1.0 / 55));
  CHECK(tail_share(v, 0.3, Tail::Top) == doctest::Approx(27.0 / 55));  // 0.3 * 10 is 3, not 4
  CHECK(tail_share(v, 0.25, Tail::Bottom) == doctest::Approx(6.0 / 55));  // ceil(2.5) = 3
  std::vector<double> flat(40, 2.5);
  for (double q : {0.1, 0.25, 0.5, 0.9}) CHECK(tail_share(flat, q, Tail::Top) == doctest::Approx(q));
  CHECK(tail_count(0.1, 10) == 1);
  CHECK(tail_count(0.7, 10) == 7);
  CHECK(tail_count(0.001, 10) == 1);
}

TEST_CASE("inequality errors") {
  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;
  };
  std::vector<double> none, zeros{0, 0}, neg{1, -1}, ok{1, 2};
  CHECK(kind([&] { lorenz(none); }) == ErrorKind::EmptyInput);
  CHECK(kind([&] { lorenz(zeros); }) == ErrorKind::AllZero);
  CHECK(kind([&] { lorenz(neg); }) == ErrorKind::InvalidValue);
  CHECK(kind([&] { tail_share(none, 0.1, Tail::Top); }) == ErrorKind::EmptyInput);
  CHECK(kind([&] { tail_share(ok, 0.0, Tail::Top); }) == ErrorKind::InvalidQuantile);
  CHECK(kind([&] { tail_share(ok, 1.0, Tail::Top); }) == ErrorKind::InvalidQuantile);
}

TEST_CASE("property: sorted-rank gini matches the pairwise oracle") {
  std::mt19937_64 gen(3);
  std::lognormal_distribution<double> d(0.0, 1.5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> v(1 + gen() % 200);
    for (auto& x : v) x = (gen() % 7 == 0) ? 0.0 : d(gen);
    if (*std::max_element(v.begin(), v.end()) == 0) v[0] = 1;
    CHECK(std::abs(gini(v) - oracle::gini_pairwise(v)) < 1e-10);
    const double q = 0.05 + 0.9 * double(gen() % 1000) / 1000.0;
    const std::size_t k = tail_count(q, v.size());
    const double total = std::accumulate(v.begin(), v.end(), 0.0);
    CHECK(tail_share(v, q, Tail::Top) == doctest::Approx(oracle::tail_sum(v, k, true) / total).epsilon(1e-12));
    CHECK(tail_share(v, q, Tail::Bottom) == doctest::Approx(oracle::tail_sum(v, k, false) / total).epsilon(1e-12));
  }
}

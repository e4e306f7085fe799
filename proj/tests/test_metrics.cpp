#include <doctest.h>

#include <random>

#include "drivemotif/metrics.hpp"
#include "oracles.hpp"

using namespace drivemotif;

namespace {
using Vec = std::vector<double>;
}

TEST_CASE("dtw examples") {
  const Vec a{0.3, -0.1, 0.7};
  CHECK(dtw(a, a) == 0.0);
  const Vec z{0, 0, 0}, o{1, 1, 1};
  const auto r = dtw_path(z, o);
  CHECK(r.cost == 3.0);
  CHECK(r.path_length == 3);
  CHECK(dtw(z, o) == 1.0);
  CHECK(dtw(z, o, {std::nullopt, false}) == 3.0);
  CHECK(dtw(Vec{0, 1, 0}, Vec{0, 1, 1, 0}) == 0.0);
}

TEST_CASE("dtw errors") {
  CHECK_THROWS_AS(dtw(Vec{}, Vec{1.0}), Error);
  try {
    dtw(Vec{1, 2, 3, 4}, Vec{1}, {2, true});
    FAIL("expected BandInfeasible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BandInfeasible);
  }
  CHECK_THROWS_AS(dtw(Vec{1}, Vec{1}, {0, true}), Error);
}

TEST_CASE("dtw equals brute-force path enumeration") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 400; ++t) {
    const auto a = oracle::dyadic_sequence(rng, 1 + rng() % 6);
    const auto b = oracle::dyadic_sequence(rng, 1 + rng() % 6);
    const auto expect = oracle::dtw_enumerate(a, b);
    const auto got = dtw_path(a, b);
    CHECK(got.cost == expect.cost);
    CHECK(got.path_length == expect.length);

    const std::size_t diff = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
    const std::size_t band = std::max<std::size_t>(1, diff) + rng() % 3;
    const auto eb = oracle::dtw_enumerate(a, b, band);
    const auto gb = dtw_path(a, b, band);
    CHECK(gb.cost == eb.cost);
    CHECK(gb.path_length == eb.length);
  }
}

TEST_CASE("dtw metric properties") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  DtwWorkspace ws;
  for (int t = 0; t < 200; ++t) {
    Vec a(1 + rng() % 40), b(1 + rng() % 40);
    for (auto& x : a) x = nd(rng);
    for (auto& x : b) x = nd(rng);
    const double d = dtw(a, b);
    CHECK(d >= 0.0);
    CHECK(dtw(b, a) == d);
    CHECK(dtw(a, a) == 0.0);
    CHECK(ws(a, b) == d);
    CHECK(dtw(a, b, {std::max(a.size(), b.size()), true}) == d);
    if (a.size() == b.size()) {
      double diag = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) diag += std::abs(a[i] - b[i]);
      CHECK(dtw_path(a, b).cost <= diag + 1e-12);
    }
  }
}

TEST_CASE("dtw symmetry holds under exact cost ties") {
  // Flat sequences make many equal-cost paths; the length rule must not depend on argument order.
  std::mt19937_64 rng(17);
  for (int t = 0; t < 300; ++t) {
    Vec a(1 + rng() % 12), b(1 + rng() % 12);
    for (auto& x : a) x = static_cast<double>(rng() % 2);
    for (auto& x : b) x = static_cast<double>(rng() % 2);
    const auto ab = dtw_path(a, b), ba = dtw_path(b, a);
    CHECK(ab.cost == ba.cost);
    CHECK(ab.path_length == ba.path_length);
  }
}

TEST_CASE("dtw_extend is bit-identical to a full table") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 300; ++t) {
    Vec a(1 + rng() % 50), b(1 + rng() % 50);
    for (auto& x : a) x = (rng() % 3 == 0) ? 0.0 : nd(rng);
    for (auto& x : b) x = (rng() % 3 == 0) ? 0.0 : nd(rng);
    const std::size_t n0 = 1 + rng() % a.size(), m0 = 1 + rng() % b.size();
    DtwFrontier f0, f1, f2;
    const auto first = dtw_extend(std::span(a).first(n0), std::span(b).first(m0), nullptr, f0);
    const auto prefix = dtw_path(std::span(a).first(n0), std::span(b).first(m0));
    CHECK(first.cost == prefix.cost);
    CHECK(first.path_length == prefix.path_length);
    const auto ext = dtw_extend(a, b, &f0, f1);
    const auto full = dtw_path(a, b);
    CHECK(ext.cost == full.cost);
    CHECK(ext.path_length == full.path_length);
    const auto scratch = dtw_extend(a, b, nullptr, f2);
    CHECK(scratch.cost == full.cost);
    CHECK(f1.row_cost == f2.row_cost);
    CHECK(f1.col_cost == f2.col_cost);
    CHECK(f1.row_len == f2.row_len);
    CHECK(f1.col_len == f2.col_len);
  }
  DtwFrontier f;
  dtw_extend(Vec{1, 2, 3}, Vec{1, 2}, nullptr, f);
  DtwFrontier g;
  CHECK_THROWS_AS(dtw_extend(Vec{1, 2}, Vec{1, 2}, &f, g), Error);
}

TEST_CASE("dtw_bounded returns the exact value or infinity") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> nd;
  int rejected = 0, kept = 0;
  for (int t = 0; t < 400; ++t) {
    Vec a(1 + rng() % 60), b(1 + rng() % 60);
    const double shift = 0.5 * nd(rng);
    for (auto& x : a) x = 0.3 * nd(rng);
    for (auto& x : b) x = 0.3 * nd(rng) + shift;
    const double limit = std::abs(0.4 * nd(rng));
    const double exact = dtw(a, b);
    const double got = dtw_bounded(a, b, limit);
    if (exact <= limit) {
      CHECK(got == exact);
      ++kept;
    } else {
      CHECK(std::isinf(got));
      ++rejected;
    }
    CHECK(dtw_bounded(a, b, std::numeric_limits<double>::infinity()) == exact);
    CHECK(dtw_bounded(a, b, exact) == exact);
    CHECK(std::isinf(dtw_bounded(a, b, std::nextafter(exact, -1.0))));
  }
  CHECK(rejected > 0);
  CHECK(kept > 0);
}

TEST_CASE("dtw_within agrees with the exact comparison") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> nd;
  int near = 0, far = 0;
  for (int t = 0; t < 600; ++t) {
    Vec a(1 + rng() % 60), b(1 + rng() % 60);
    const double scale = t % 2 ? 0.02 : 0.3;
    for (auto& x : a) x = scale * nd(rng);
    for (auto& x : b) x = scale * nd(rng);
    DistanceOptions opts;
    if (t % 3 == 0) opts.band = (a.size() > b.size() ? a.size() - b.size() : b.size() - a.size()) + 1 + rng() % 4;
    if (t % 5 == 0) opts.normalize_by_path = false;
    const double exact = dtw(a, b, opts);
    for (double limit : {exact, std::nextafter(exact, 0.0), std::nextafter(exact, 1e9), std::abs(0.3 * nd(rng))}) {
      const bool got = dtw_within(a, b, limit, opts);
      CHECK(got == (exact <= limit));
      (got ? near : far) += 1;
    }
  }
  CHECK(near > 0);
  CHECK(far > 0);
  CHECK_THROWS_AS(dtw_within(Vec{1, 2, 3, 4}, Vec{1}, 1.0, DistanceOptions{1}), Error);
}

TEST_CASE("euclid") {
  CHECK(euclid(Vec{1, 2}, Vec{1, 2}) == 0.0);
  CHECK(euclid(Vec{0, 0}, Vec{3, 4}) == 2.5);
  CHECK(euclid(Vec{-1.5}, Vec{2.0}) == 3.5);
  CHECK_THROWS_AS(euclid(Vec{1}, Vec{1, 2}), Error);
  CHECK_THROWS_AS(euclid(Vec{}, Vec{}), Error);
}

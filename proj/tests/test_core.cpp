#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <set>

#include "bcc/bitrow.hpp"
#include "bcc/rng.hpp"

using namespace bcc;

TEST_CASE("splitmix64 reference stream") {
  // Published reference outputs for seed 0.
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xe220a8397b1dcdafull);
  CHECK(rng.next() == 0x6e789e6aa1b965f4ull);
  CHECK(rng.next() == 0x06c45d188009454full);
  CHECK(rng.next() == 0xf88bb8a8724c81ecull);
  CHECK(rng.next() == 0x1b39896a51a8749bull);

  SplitMix64 rng2(1234567);
  CHECK(rng2.next() == 0x599ed017fb08fc85ull);
  CHECK(rng2.next() == 0x2c73f08458540fa5ull);
  CHECK(rng2.next() == 0x883ebce5a3f27c77ull);
}

TEST_CASE("derive_seed equals advancing the base stream") {
  SplitMix64 rng(42);
  for (std::uint64_t i = 0; i < 16; ++i) CHECK(derive_seed(42, i) == rng.next());
  CHECK(derive_seed(42, 0) == 0xbdd732262feb6e95ull);
  CHECK(derive_seed(42, 1) == 0x28efe333b266f103ull);
}

TEST_CASE("next_below stays in range and hits every value") {
  SplitMix64 rng(7);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    std::uint64_t v = rng.next_below(7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
  for (int i = 0; i < 100; ++i) CHECK(rng.next_below(1) == 0);
}

TEST_CASE("next_unit lies in [0,1) and matches the top-53-bit rule") {
  SplitMix64 a(0), b(0);
  for (int i = 0; i < 1000; ++i) {
    double u = a.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(u == static_cast<double>(b.next() >> 11) * 0x1.0p-53);
  }
  SplitMix64 c(0);
  CHECK(c.next_unit() == doctest::Approx(0.8833108082136426).epsilon(1e-15));
}

TEST_CASE("bitrow basics") {
  BitRow row(70);
  CHECK(row.size() == 70);
  CHECK(row.none());
  CHECK(row.count() == 0);
  row.set(0);
  row.set(63);
  row.set(64);
  row.set(69);
  CHECK(row.count() == 4);
  CHECK(row.test(63));
  CHECK(!row.test(62));
  row.reset(63);
  CHECK(row.count() == 3);
  CHECK(row.to_indices() == std::vector<std::uint32_t>{0, 64, 69});
}

TEST_CASE("bitrow set algebra and popcount helpers") {
  BitRow a(10), b(10);
  for (std::size_t i : {0, 2, 4, 6, 8}) a.set(i);
  for (std::size_t i : {0, 1, 2, 3}) b.set(i);
  CHECK((a & b).count() == 2);
  CHECK((a | b).count() == 7);
  CHECK((a ^ b).count() == 5);
  CHECK(and_not(a, b).count() == 3);
  CHECK(a.count_and(b) == 2);
  CHECK(a.count_and_not(b) == 3);
  CHECK((a & b) == ([&] {
          BitRow x(10);
          x.set(0);
          x.set(2);
          return x;
        }()));
}

TEST_CASE("bitrow full keeps padding clear") {
  for (std::size_t n : {0, 1, 63, 64, 65, 128, 130}) {
    BitRow row = BitRow::full(n);
    CHECK(row.count() == n);
    BitRow other(n);
    other |= row;
    other.and_not(row);
    CHECK(other.none());
  }
}

TEST_CASE("bitrow ordering is deterministic and consistent with equality") {
  BitRow a(5), b(5);
  a.set(1);
  b.set(2);
  CHECK(a != b);
  CHECK(((a < b) || (b < a)));
  BitRow c = a;
  CHECK(c == a);
  CHECK(!(c < a));
  CHECK(!(a < c));
}

#include <doctest.h>

#include <set>

#include "uqc/random_circuit.hpp"
#include "uqc/rng.hpp"

TEST_CASE("philox known-answer vectors") {
  // Reference vectors from the Random123 distribution (kat_vectors).
  CHECK(uqc::philox4x32({0, 0, 0, 0}, {0, 0}) ==
        std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(uqc::philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
        std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(uqc::philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
        std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are reproducible and distinct") {
  uqc::Rng a(42), b(42), c(42, 1);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
  uqc::Rng root(7);
  CHECK(root.substream(1).next_u64() == uqc::Rng(7).substream(1).next_u64());
  CHECK(root.substream(1).next_u64() != root.substream(2).next_u64());
}

TEST_CASE("bounded draws stay in range and cover it") {
  uqc::Rng r(3);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto v = r.below(7);
    CHECK(v < 7);
    seen.insert(v);
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(seen.size() == 7);
  const auto p = uqc::random_permutation(r, 10);
  CHECK(std::set<std::size_t>(p.begin(), p.end()).size() == 10);
}

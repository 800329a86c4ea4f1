#include "branchfall/braid.hpp"
#include "branchfall/error.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace branchfall;

namespace {

BraidWord random_word(std::mt19937& rng, int strands, int len) {
  std::uniform_int_distribution<int> gen(1, strands - 1), sign(0, 1);
  BraidWord w{strands, {}};
  for (int i = 0; i < len; ++i) w.letters.push_back(sign(rng) ? gen(rng) : -gen(rng));
  return w;
}

}  // namespace

TEST_CASE("parse and print") {
  auto w = BraidWord::parse("s1 s2^-1 s1^3", 3);
  CHECK(w.letters == std::vector<int>{1, -2, 1, 1, 1});
  CHECK(w.str() == "s1 s2^-1 s1 s1 s1");
  CHECK(BraidWord::parse(w.str(), 3) == w);
  CHECK(BraidWord::parse("", 2).letters.empty());
  CHECK_THROWS_AS(BraidWord::parse("s3", 3), Error);
  CHECK_THROWS_AS(BraidWord::parse("x1", 3), Error);
  CHECK_THROWS_AS(BraidWord::parse("s0", 3), Error);
  CHECK_THROWS_AS(BraidWord::parse("s1^", 3), Error);
}

TEST_CASE("exponent sums") {
  CHECK(exponent_sum(torus_braid(2, 3)) == 3);
  CHECK(exponent_sum(torus_braid(3, 4)) == 8);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = random_word(rng, 4, 7);
    BraidWord s{4, {2}};
    CHECK(exponent_sum(g * s * g.inverse()) == 1);
    auto w = random_word(rng, 4, 12);
    CHECK(exponent_sum(w.free_reduced()) == exponent_sum(w));
    CHECK(exponent_sum(g * w * g.inverse()) == exponent_sum(w));
  }
}

TEST_CASE("closure components") {
  CHECK(permutation_and_components(BraidWord{3, {}}).components == 3);
  CHECK(permutation_and_components(torus_braid(2, 3)).components == 1);
  auto info = permutation_and_components(torus_braid(3, 4));
  CHECK(info.components == 1);
  // (s1 s2)^4 = (s1 s2)^1 as a permutation: a 3-cycle
  CHECK(info.permutation == permutation_and_components(BraidWord{3, {1, 2}}).permutation);
  CHECK(permutation_and_components(torus_braid(2, 2)).components == 2);
  for (int p = 2; p <= 7; ++p)
    for (int q = 1; q <= 9; ++q) CHECK(permutation_and_components(torus_braid(p, q)).components == std::gcd(p, q));
}

TEST_CASE("quasipositive composition") {
  std::vector<Band> three(3, Band{BraidWord{2, {}}, 1});
  CHECK(qp_compose(three, 2) == torus_braid(2, 3));
  auto one = qp_compose({Band{BraidWord{3, {2}}, 1}}, 3);
  CHECK(one.letters == std::vector<int>{2, 1, -2});
  CHECK(exponent_sum(one) == 1);
  CHECK_THROWS_AS(qp_compose({Band{BraidWord{2, {}}, 1}}, 3), Error);

  std::mt19937 rng(11);
  std::uniform_int_distribution<int> len(0, 6), gen(1, 4);
  for (int trial = 0; trial < 120; ++trial) {
    int nb = 1 + trial % 7;
    std::vector<Band> bands;
    for (int k = 0; k < nb; ++k) bands.push_back({random_word(rng, 5, len(rng)), gen(rng)});
    auto w = qp_compose(bands, 5);
    CHECK(exponent_sum(w) == nb);
    auto back = qp_bands(w);
    REQUIRE(back.has_value());
    CHECK(qp_compose(*back, 5) == w);
  }
  CHECK_FALSE(qp_bands(BraidWord{2, {-1}}).has_value());
}

TEST_CASE("slice-Bennequin bound") {
  CHECK(slice_bennequin(torus_braid(2, 3)) == -1);
  CHECK(slice_bennequin(BraidWord{1, {}}) == 1);
  CHECK(slice_bennequin(torus_braid(3, 4)) == -5);
  for (int p = 2; p <= 8; ++p)
    for (int q = p + 1; q <= 9; ++q)
      if (std::gcd(p, q) == 1) CHECK(slice_bennequin(torus_braid(p, q)) == 1 - (p - 1) * (q - 1));
}

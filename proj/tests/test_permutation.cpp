#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "permgrid/checks/oracles.hpp"
#include "permgrid/errors.hpp"
#include "permgrid/permutation.hpp"

using namespace permgrid;

namespace {

Permutation P(const char* s) { return Permutation::parse(s); }

Permutation random_perm(std::mt19937& rng, std::size_t n) {
  std::vector<int> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i + 1);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(std::span<const int>(v));
}

}  // namespace

TEST_CASE("containment examples") {
  CHECK(contains(P("132"), P("32514")));
  CHECK(contains(P("1"), P("1")));
  CHECK(contains(P("4321"), P("54213")));
  for (const auto& p : all_permutations(4)) CHECK(contains(Permutation{}, p));
  CHECK_FALSE(contains(P("321"), P("2143")));
  CHECK(avoids(P("321"), P("2143")));
}

TEST_CASE("sums") {
  CHECK(skew_sum(skew_sum(P("1"), P("12")), P("1")) == P("4231"));
  CHECK(skew_sum(P("1"), skew_sum(P("1"), P("213"))) == P("54213"));
  CHECK(direct_sum(P("2413"), Permutation{}) == P("2413"));
  CHECK(direct_sum(P("21"), P("1")) == P("213"));
}

TEST_CASE("symmetries") {
  CHECK(reverse(P("1342")) == P("2431"));
  CHECK(complement(P("12")) == P("21"));
  CHECK(inverse(P("2413")) == P("3142"));
  // Closure of {1342} under the three generators is its symmetry class.
  std::set<Permutation> orbit{P("1342")};
  std::vector<Permutation> todo{P("1342")};
  while (!todo.empty()) {
    const auto p = todo.back();
    todo.pop_back();
    for (const auto s : {Symmetry::reverse, Symmetry::complement, Symmetry::inverse}) {
      if (orbit.insert(apply_symmetry(p, s)).second) todo.push_back(apply_symmetry(p, s));
    }
  }
  CHECK(orbit.count(P("4213")) == 1);
  CHECK(orbit.size() <= 8);
}

TEST_CASE("sum decomposition") {
  CHECK(sum_decompose(P("123")) == std::vector<Permutation>{P("1"), P("1"), P("1")});
  CHECK(sum_decompose(P("2413")) == std::vector<Permutation>{P("2413")});
  CHECK(sum_decompose(P("2134")) == std::vector<Permutation>{P("21"), P("1"), P("1")});
  CHECK(sum_decompose(Permutation{}).empty());
  CHECK(is_sum_indecomposable(P("21")));
  CHECK_FALSE(is_sum_indecomposable(P("213")));
  CHECK(skew_decompose(P("4231")) == std::vector<Permutation>{P("1"), P("12"), P("1")});
  CHECK(is_skew_indecomposable(P("12")));
}

TEST_CASE("one-point deletions and extensions") {
  CHECK(one_point_extensions(P("1")) == std::vector<Permutation>{P("12"), P("21")});
  CHECK(one_point_deletions(P("132")) == std::vector<Permutation>{P("12"), P("21")});
  CHECK(one_point_extensions(Permutation{}) == std::vector<Permutation>{P("1")});
  CHECK(one_point_deletions(P("1")) == std::vector<Permutation>{Permutation{}});
}

TEST_CASE("text format") {
  CHECK(P("32514").str() == "32514");
  CHECK(P("[10,3,2,1,4,5,6,7,8,9]").str() == "10,3,2,1,4,5,6,7,8,9");
  CHECK(P("10,3,2,1,4,5,6,7,8,9") == P("[10,3,2,1,4,5,6,7,8,9]"));
  CHECK(P("").empty());
  CHECK(P("321").comma_str() == "3,2,1");
  CHECK_THROWS_AS(P("3251"), ValidationError);
  CHECK_THROWS_AS(P("12a"), ParseError);
  CHECK_THROWS_AS(Permutation({1, 1}), ValidationError);
}

TEST_CASE("ordering is shortlex") {
  CHECK(P("21") < P("123"));
  CHECK(P("123") < P("132"));
  CHECK(Permutation{} < P("1"));
}

TEST_CASE("property: containment matches the subsequence oracle") {
  for (std::size_t k = 0; k <= 4; ++k) {
    for (const auto& pattern : all_permutations(k)) {
      for (std::size_t n = 0; n <= 6; ++n) {
        for (const auto& host : all_permutations(n)) {
          REQUIRE(contains(pattern, host) == oracle::naive_contains(pattern, host));
        }
      }
    }
  }
}

TEST_CASE("property: containment is reflexive, transitive and length monotone") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_perm(rng, 1 + rng() % 3);
    const auto b = random_perm(rng, 2 + rng() % 4);
    const auto c = random_perm(rng, 4 + rng() % 5);
    CHECK(contains(c, c));
    if (contains(a, b) && contains(b, c)) CHECK(contains(a, c));
    if (contains(b, c)) CHECK(b.size() <= c.size());
  }
}

TEST_CASE("property: sums are associative and decompose by concatenation") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_perm(rng, rng() % 4);
    const auto b = random_perm(rng, rng() % 4);
    const auto c = random_perm(rng, rng() % 4);
    CHECK(direct_sum(direct_sum(a, b), c) == direct_sum(a, direct_sum(b, c)));
    CHECK(skew_sum(skew_sum(a, b), c) == skew_sum(a, skew_sum(b, c)));
    auto expected = sum_decompose(a);
    const auto tail = sum_decompose(b);
    expected.insert(expected.end(), tail.begin(), tail.end());
    CHECK(sum_decompose(direct_sum(a, b)) == expected);
  }
}

TEST_CASE("property: deletion and extension are converse") {
  for (std::size_t n = 0; n <= 5; ++n) {
    for (const auto& q : all_permutations(n)) {
      for (const auto& p : one_point_extensions(q)) {
        const auto del = one_point_deletions(p);
        CHECK(std::binary_search(del.begin(), del.end(), q));
      }
      for (const auto& p : all_permutations(n + 1)) {
        const auto del = one_point_deletions(p);
        const auto ext = one_point_extensions(q);
        CHECK(std::binary_search(del.begin(), del.end(), q) == std::binary_search(ext.begin(), ext.end(), p));
      }
    }
  }
}

TEST_CASE("property: symmetries preserve containment") {
  for (std::size_t k = 1; k <= 3; ++k) {
    for (const auto& pattern : all_permutations(k)) {
      for (const auto& host : all_permutations(6)) {
        const bool base = contains(pattern, host);
        for (const auto s : {Symmetry::reverse, Symmetry::complement, Symmetry::inverse}) {
          REQUIRE(contains(apply_symmetry(pattern, s), apply_symmetry(host, s)) == base);
        }
      }
    }
  }
}

TEST_CASE("symmetries are involutions") {
  for (const auto& p : all_permutations(5)) {
    for (const auto s : {Symmetry::reverse, Symmetry::complement, Symmetry::inverse}) {
      CHECK(apply_symmetry(apply_symmetry(p, s), s) == p);
    }
  }
}

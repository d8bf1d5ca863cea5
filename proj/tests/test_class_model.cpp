#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "permgrid/class_expr.hpp"
#include "permgrid/errors.hpp"
#include "permgrid/grid.hpp"

using namespace permgrid;

namespace {

Permutation P(const char* s) { return Permutation::parse(s); }

// Layered permutations are exactly the direct sums of decreasing runs.
bool is_layered(const Permutation& p) {
  for (const auto& block : sum_decompose(p)) {
    if (block != Permutation::decreasing(block.size())) return false;
  }
  return true;
}

const std::vector<const char*> kCorpus = {
    "Av(321)",
    "Av(231,4123)",
    "set(1)",
    "set(1,12,21)",
    "merge(Av(21),Av(12))",
    "merge(Av(321),set(1))",
    "grid([[Av(21),Av(21)]])",
    "grid([[Av(12),E],[E,Av(21)]])",
    "sumclose(Av(12))",
    "skewclose(Av(21))",
    "inter(Av(321),Av(132))",
    "staircase(inc,Av(21),set(1),3)",
    "staircase(spiral,Av(21),Av(12),2)",
};

}  // namespace

TEST_CASE("parse and print") {
  CHECK(parse_class_expr("Av(321)").kind() == ClassKind::avoid);
  CHECK(parse_class_expr("Av(321)").basis()[0] == P("321"));
  const auto m = parse_class_expr("merge(Av(21),Av(12))");
  CHECK(m.kind() == ClassKind::merge);
  CHECK(m.left().str() == "Av(21)");
  CHECK(m.right().str() == "Av(12)");
  const auto g = parse_class_expr("grid([[Av(21),Av(21)]])");
  CHECK(g.kind() == ClassKind::grid);
  CHECK(g.matrix().rows() == 1);
  CHECK(g.matrix().columns() == 2);
  CHECK(parse_class_expr(" Av( 4123 , 321 ) ").str() == "Av(321,4123)");
  CHECK(parse_class_expr("set(1)").str() == "set(1)");
  CHECK(parse_class_expr("set(e)").str() == "set(e)");
  CHECK(parse_class_expr("Av([10,9,8,7,6,5,4,3,2,1])").str() == "Av([10,9,8,7,6,5,4,3,2,1])");
}

TEST_CASE("canonical form round trips") {
  for (const char* text : kCorpus) {
    const auto e = parse_class_expr(text);
    CHECK(parse_class_expr(e.str()).str() == e.str());
  }
}

TEST_CASE("grid rows are read top first") {
  const auto g = parse_class_expr("grid([[Av(12),E],[E,Av(21)]])");
  CHECK(g.matrix().cell(1, 2)->str() == "Av(12)");
  CHECK(g.matrix().cell(2, 1)->str() == "Av(21)");
  CHECK(g.matrix().is_empty_cell(1, 1));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_class_expr("Av(321"), ParseError);
  CHECK_THROWS_AS(parse_class_expr("foo(1)"), ParseError);
  CHECK_THROWS_AS(parse_class_expr("merge(Av(1))"), ParseError);
  CHECK_THROWS_AS(parse_class_expr("grid([[Av(1)],[Av(1),Av(1)]])"), Error);
  try {
    parse_class_expr("Av(12)x");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
}

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(parse_class_expr("Av(12,123)"), ValidationError);
  CHECK_THROWS_AS(parse_class_expr("set(12)"), ValidationError);
  CHECK_NOTHROW(parse_class_expr("set(1,12)"));
}

TEST_CASE("membership examples") {
  CHECK_FALSE(member(parse_class_expr("Av(321)"), P("321")));
  CHECK(member(parse_class_expr("sumclose(Av(12))"), P("2134")));
  CHECK_FALSE(member(parse_class_expr("set(1)"), P("12")));
  CHECK(member(parse_class_expr("set(1)"), Permutation{}));
  CHECK(member(parse_class_expr("skewclose(Av(21))"), P("3412")));
  CHECK_FALSE(member(parse_class_expr("skewclose(Av(21))"), P("2143")));
}

TEST_CASE("sum closure of decreasing permutations is the layered class") {
  const auto layered = parse_class_expr("sumclose(Av(12))");
  for (std::size_t n = 0; n <= 7; ++n) {
    for (const auto& p : all_permutations(n)) REQUIRE(member(layered, p) == is_layered(p));
  }
}

TEST_CASE("intersection length") {
  const auto a = max_intersection_length(parse_class_expr("Av(12)"), parse_class_expr("Av(21)"), 5);
  CHECK_FALSE(a.exceeds_cutoff);
  CHECK(a.length == 1);
  CHECK(max_intersection_length(parse_class_expr("Av(321)"), parse_class_expr("Av(321)"), 3).exceeds_cutoff);
  const auto c = max_intersection_length(parse_class_expr("Av(21)"), parse_class_expr("set(1)"), 5);
  CHECK_FALSE(c.exceeds_cutoff);
  CHECK(c.length == 1);
}

TEST_CASE("property: every class in the corpus is downward closed") {
  for (const char* text : kCorpus) {
    const auto e = parse_class_expr(text);
    for (std::size_t n = 1; n <= 7; ++n) {
      for (const auto& p : all_permutations(n)) {
        if (!member(e, p)) continue;
        for (const auto& q : one_point_deletions(p)) REQUIRE_MESSAGE(member(e, q), text << " " << p.str());
      }
    }
  }
}

TEST_CASE("property: intersection is conjunction") {
  const auto a = parse_class_expr("Av(321)");
  const auto b = parse_class_expr("merge(Av(21),Av(12))");
  const auto both = ClassExpr::intersection({a, b});
  for (std::size_t n = 0; n <= 6; ++n) {
    for (const auto& p : all_permutations(n)) REQUIRE(member(both, p) == (member(a, p) && member(b, p)));
  }
}

TEST_CASE("property: cached and fresh evaluation agree") {
  std::mt19937 rng(3);
  clear_membership_caches();
  for (const char* text : kCorpus) {
    const auto e = parse_class_expr(text);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = rng() % 8;
      const auto all = all_permutations(n);
      const auto& p = all[rng() % all.size()];
      const bool first = member(e, p, CacheMode::full);
      CHECK(member(e, p, CacheMode::full) == first);
      CHECK(member(e, p, CacheMode::nested_only) == first);
      CHECK(member_uncached(e, p) == first);
    }
  }
  CHECK(membership_cache_size() > 0);
  clear_membership_caches();
  CHECK(membership_cache_size() == 0);
}

TEST_CASE("dsl permutations") {
  CHECK(dsl_perm(Permutation{}) == "e");
  CHECK(dsl_perm(P("321")) == "321");
  CHECK(dsl_perm(P("10,1,2,3,4,5,6,7,8,9")) == "[10,1,2,3,4,5,6,7,8,9]");
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "permgrid/checks/oracles.hpp"
#include "permgrid/errors.hpp"
#include "permgrid/merge.hpp"
#include "permgrid/search_budget.hpp"

using namespace permgrid;

namespace {

Permutation P(const char* s) { return Permutation::parse(s); }

const ClassExpr kInc = parse_class_expr("Av(21)");
const ClassExpr kDec = parse_class_expr("Av(12)");

}  // namespace

TEST_CASE("colorings") {
  CHECK(Coloring::parse("RBB").str() == "RBB");
  CHECK_THROWS_AS(Coloring::parse("RX"), ParseError);
  const auto w = merge_coloring(kInc, kDec, P("2143"));
  CHECK_FALSE(w.has_value());
  const auto v = merge_coloring(kInc, kDec, P("3142"));
  REQUIRE(v.has_value());
  CHECK(validate_coloring(kInc, kDec, P("3142"), *v));
  CHECK(validate_coloring(kInc, kDec, P("21"), Coloring::parse("BR")));
  CHECK_FALSE(validate_coloring(kInc, kDec, P("21"), Coloring::parse("RR")));
  CHECK_FALSE(validate_coloring(kInc, kDec, P("21"), Coloring::parse("R")));
}

TEST_CASE("merge membership examples") {
  CHECK(merge_member(kInc, kInc, P("2143")));
  CHECK_FALSE(merge_member(kInc, kInc, P("321")));
  CHECK(merge_member(kInc, kDec, Permutation{}));
  CHECK_FALSE(merge_member(kInc, kDec, P("3412")));
}

TEST_CASE("property: merge agrees with all colorings") {
  const std::vector<std::pair<const char*, const char*>> pairs = {
      {"Av(21)", "Av(12)"}, {"Av(21)", "Av(21)"}, {"Av(321)", "set(1)"}, {"Av(231)", "Av(12)"}};
  for (const auto& [l, r] : pairs) {
    const auto c = parse_class_expr(l);
    const auto d = parse_class_expr(r);
    for (std::size_t n = 0; n <= 6; ++n) {
      for (const auto& p : all_permutations(n)) {
        const auto w = merge_coloring(c, d, p);
        REQUIRE(w.has_value() == oracle::naive_merge_member(c, d, p));
        if (w) REQUIRE(validate_coloring(c, d, p, *w));
      }
    }
  }
}

TEST_CASE("property: merge is symmetric and monotone") {
  const auto c = parse_class_expr("Av(231)");
  const auto d = parse_class_expr("Av(12)");
  const auto smaller = parse_class_expr("Av(123,231)");
  for (std::size_t n = 0; n <= 6; ++n) {
    for (const auto& p : all_permutations(n)) {
      const bool in = merge_member(c, d, p);
      REQUIRE(merge_member(d, c, p) == in);
      if (merge_member(smaller, d, p)) REQUIRE(in);
    }
  }
}

TEST_CASE("merge of two increasing classes is counted by Catalan numbers") {
  const auto e = enumerate_class(ClassExpr::merge(kInc, kInc), 9);
  CHECK(e.sequence.counts == oracle::catalan(9));
}

TEST_CASE("property: merge counts never exceed the binomial bound") {
  const auto c = enumerate_class(kInc, 8).sequence;
  const auto d = enumerate_class(parse_class_expr("Av(231)"), 8).sequence;
  const auto m = enumerate_class(ClassExpr::merge(kInc, parse_class_expr("Av(231)")), 8).sequence;
  for (std::size_t n = 0; n <= 8; ++n) CHECK(m.counts[n] <= merge_upper_bound(c, d, n));
  // sum_i binom(4,i)^2 = 70
  CHECK(merge_upper_bound(enumerate_class(kInc, 4).sequence, enumerate_class(kDec, 4).sequence, 4) == 70);
}

TEST_CASE("finite-intersection inequality") {
  const auto rows = prop2_inequality_check(kInc, kDec, 1, 8);
  REQUIRE(rows.size() == 9);
  for (const auto& row : rows) {
    CHECK(row.holds);
    CHECK(row.upper_bound_sum <= row.right);
  }
  CHECK(rows[0].upper_bound_sum == 1);
  CHECK(rows[1].upper_bound_sum == 2);
  CHECK(rows[1].merge_count == 1);
  CHECK(rows[4].upper_bound_sum == 70);
  CHECK(rows[4].binomial_sum == 11);
  CHECK_THROWS_AS(prop2_inequality_check(kInc, parse_class_expr("Av(321)"), 1, 5), DomainError);
}

TEST_CASE("budget exhaustion") {
  set_default_node_budget(3);
  clear_membership_caches();
  CHECK_THROWS_AS(merge_member(parse_class_expr("Av(321)"), parse_class_expr("Av(321)"), P("35172846"),
                               CacheMode::off),
                  BudgetExceeded);
  set_default_node_budget(kDefaultNodeBudget);
  clear_membership_caches();
}

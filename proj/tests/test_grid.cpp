#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "permgrid/checks/oracles.hpp"
#include "permgrid/errors.hpp"
#include "permgrid/grid.hpp"

using namespace permgrid;

namespace {

Permutation P(const char* s) { return Permutation::parse(s); }

const ClassExpr kInc = parse_class_expr("Av(21)");
const ClassExpr kDec = parse_class_expr("Av(12)");
const ClassExpr kPoint = parse_class_expr("set(1)");

std::vector<BigInt> ints(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST_CASE("gridding examples") {
  const auto m = parse_class_expr("grid([[Av(21),Av(21)]])").matrix();
  const auto g = gridding_exists(m, P("312"));
  REQUIRE(g.has_value());
  CHECK(g->column_divisions == std::vector<std::size_t>{1, 2, 4});
  CHECK(g->row_divisions == std::vector<std::size_t>{1, 4});
  CHECK(validate_gridding(m, P("312"), *g));
  CHECK_FALSE(gridding_exists(m, P("321")).has_value());
  CHECK(gridding_exists(m, Permutation{}).has_value());
  CHECK_FALSE(validate_gridding(m, P("312"), Gridding{{1, 3, 4}, {1, 4}}));
}

TEST_CASE("increasing staircase layout") {
  const auto one = build_increasing_staircase(kInc, kPoint, 1);
  // t rows and t+1 columns
  CHECK(one.columns() == 2);
  CHECK(one.rows() == 1);
  CHECK(one.cell(1, 1)->str() == "Av(21)");
  CHECK(one.cell(2, 1)->str() == "set(1)");
  const auto two = build_increasing_staircase(kInc, kPoint, 2);
  CHECK(two.columns() == 3);
  CHECK(two.rows() == 2);
  CHECK(two.cell(2, 2)->str() == "Av(21)");
  CHECK(two.cell(3, 2)->str() == "set(1)");
  CHECK(two.is_empty_cell(1, 2));
  CHECK(two.is_empty_cell(3, 1));
  CHECK(two.str() == "staircase(inc,Av(21),set(1),2)");
  CHECK(two.grid_str() == "grid([[E,Av(21),set(1)],[Av(21),set(1),E]])");
}

TEST_CASE("spiral staircase layout") {
  const auto m = build_spiral_staircase(kInc, kDec, 5);
  CHECK(m.path().size() == 10);
  CHECK(m.path()[0] == CellIndex{m.path()[0].column, m.path()[0].row});
  for (std::size_t i = 1; i < m.path().size(); ++i) {
    const auto a = m.path()[i - 1];
    const auto b = m.path()[i];
    // consecutive cells share a row or a column
    CHECK((a.row == b.row || a.column == b.column));
  }
  for (std::size_t t = 1; t <= 6; ++t) {
    const auto v = validate_staircase(build_spiral_staircase(kInc, kDec, t));
    CHECK_MESSAGE(v.ok, v.diagnostic);
  }
}

TEST_CASE("staircase validation") {
  for (std::size_t t = 1; t <= 6; ++t) CHECK(validate_staircase(build_increasing_staircase(kInc, kDec, t)).ok);
  GridMatrix bad(2, 2);
  for (std::size_t k = 1; k <= 2; ++k)
    for (std::size_t l = 1; l <= 2; ++l) bad.set_cell(k, l, kInc);
  const auto v = validate_staircase(bad);
  CHECK_FALSE(v.ok);
  CHECK_FALSE(v.diagnostic.empty());
}

TEST_CASE("property: gridding agrees with all division pairs") {
  const std::vector<GridMatrix> matrices = {
      parse_class_expr("grid([[Av(21),Av(21)]])").matrix(),
      parse_class_expr("grid([[Av(12),E],[E,Av(21)]])").matrix(),
      parse_class_expr("grid([[Av(21)],[Av(12)]])").matrix(),
      build_increasing_staircase(kInc, kPoint, 2),
      build_increasing_staircase(kDec, kDec, 2),
      build_spiral_staircase(kInc, kDec, 2),
  };
  for (const auto& m : matrices) {
    for (std::size_t n = 0; n <= 6; ++n) {
      for (const auto& p : all_permutations(n)) {
        const auto g = gridding_exists(m, p);
        REQUIRE_MESSAGE(g.has_value() == oracle::naive_gridding_exists(m, p), m.grid_str() << " " << p.str());
        if (g) REQUIRE(validate_gridding(m, p, *g));
      }
    }
  }
}

TEST_CASE("staircase counts") {
  CHECK(staircase_counts(StaircaseKind::increasing, kInc, kPoint, 1, 2).sequence.counts == ints({1, 1, 2}));
  CHECK(staircase_counts(StaircaseKind::increasing, kInc, kInc, std::nullopt, 8).sequence.counts ==
        oracle::catalan(8));
  const auto av = enumerate_class(parse_class_expr("Av(321,4123)"), 8).sequence.counts;
  const auto three = staircase_counts(StaircaseKind::increasing, kInc, kPoint, 3, 8).sequence.counts;
  for (std::size_t n = 0; n <= 8; ++n) {
    if (n <= 5) CHECK(three[n] == av[n]);
    else CHECK(three[n] < av[n]);
  }
  CHECK(staircase_counts(StaircaseKind::increasing, kInc, kPoint, std::nullopt, 8).sequence.counts == av);
}

TEST_CASE("a staircase with an empty D is the sum closure of C") {
  const auto sc = staircase_counts(StaircaseKind::increasing, kDec, std::nullopt, std::nullopt, 7).sequence.counts;
  CHECK(sc == enumerate_class(parse_class_expr("sumclose(Av(12))"), 7).sequence.counts);
}

TEST_CASE("property: counts grow with t and stabilize at t = n") {
  for (std::size_t n = 1; n <= 7; ++n) {
    BigInt previous = 0;
    for (std::size_t t = 1; t <= n + 1; ++t) {
      const auto c = staircase_counts(StaircaseKind::increasing, kDec, kDec, t, n).sequence.counts[n];
      CHECK(c >= previous);
      if (t == n + 1) CHECK(c == previous);
      previous = c;
    }
  }
}

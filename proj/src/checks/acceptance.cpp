#include "permgrid/checks/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "permgrid/checks/oracles.hpp"
#include "permgrid/class_expr.hpp"
#include "permgrid/enumerator.hpp"
#include "permgrid/errors.hpp"
#include "permgrid/grid.hpp"
#include "permgrid/merge.hpp"
#include "permgrid/spectral.hpp"

namespace permgrid::checks {

namespace {

// Pinned tolerances.
constexpr double kSpectralTolerance = 1e-9;
constexpr double kLimitTolerance = 1e-10;
constexpr double kConstantTolerance = 1e-12;
constexpr double kRatioTolerance = 0.15;
constexpr std::uint64_t kSeed = 20240607;

ClassExpr cls(const char* text) { return parse_class_expr(text); }

std::string join_counts(const std::vector<BigInt>& counts) {
  std::string out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out += ",";
    out += counts[i].str();
  }
  return out;
}

std::string perms_str(const std::vector<Permutation>& perms) {
  std::string out = "{";
  for (std::size_t i = 0; i < perms.size(); ++i) {
    if (i) out += ",";
    out += perms[i].str();
  }
  return out + "}";
}

EnumerateOptions enum_options(const AcceptanceOptions& o, bool keep = false) {
  EnumerateOptions e;
  e.keep_members = keep;
  e.threads = o.threads;
  return e;
}

void containment_oracle(CriterionResult& r, const AcceptanceOptions&) {
  std::size_t pairs = 0;
  std::size_t mismatches = 0;
  std::string first;
  for (std::size_t k = 0; k <= 4; ++k) {
    for (const auto& pattern : oracle::naive_permutations(k)) {
      for (std::size_t n = 0; n <= 7; ++n) {
        for (const auto& host : oracle::naive_permutations(n)) {
          ++pairs;
          if (contains(pattern, host) != oracle::naive_contains(pattern, host)) {
            if (mismatches++ == 0) first = " first " + dsl_perm(pattern) + " in " + dsl_perm(host);
          }
        }
      }
    }
  }
  r.passed = mismatches == 0;
  r.detail = std::to_string(pairs) + " pairs, " + std::to_string(mismatches) + " mismatches" + first;
}

void catalan_check(CriterionResult& r, const AcceptanceOptions& o) {
  const auto counts = enumerate_class(cls("Av(321)"), 12, enum_options(o)).sequence.counts;
  const auto expected = oracle::catalan(12);
  bool ok = counts == expected;
  const Permutation p321{3, 2, 1};
  for (std::size_t n = 0; n <= 8; ++n) {
    std::size_t filtered = 0;
    for (const auto& p : oracle::naive_permutations(n)) filtered += !oracle::naive_contains(p321, p);
    ok = ok && counts[n] == filtered;
  }
  r.passed = ok;
  r.detail = "counts " + join_counts(counts);
}

void merge_identity(CriterionResult& r, const AcceptanceOptions& o) {
  const auto a = compare_classes(cls("Av(321)"), cls("merge(Av(21),Av(21))"), 9, enum_options(o));
  const auto b = compare_classes(cls("Av(4321)"), cls("merge(Av(321),Av(21))"), 8, enum_options(o));
  r.passed = a.equal && a.checked_through == 9 && b.equal && b.checked_through == 8;
  r.detail = "Av(321) vs merge through " + std::to_string(a.checked_through) + (a.equal ? " equal" : " differ") +
             "; Av(4321) vs merge through " + std::to_string(b.checked_through) + (b.equal ? " equal" : " differ");
}

void skew_merged_basis(CriterionResult& r, const AcceptanceOptions& o) {
  const auto basis = find_basis(cls("merge(Av(21),Av(12))"), 5, enum_options(o));
  r.passed = basis == std::vector<Permutation>{Permutation{2, 1, 4, 3}, Permutation{3, 4, 1, 2}};
  r.detail = "basis " + perms_str(basis);
}

void six_element_basis(CriterionResult& r, const AcceptanceOptions& o) {
  const auto c = cls("merge(grid([[Av(21),Av(21)]]),Av(21))");
  const std::size_t depth = o.extended ? 7 : 6;
  const auto basis = find_basis(c, depth, enum_options(o));
  const std::vector<Permutation> expected{
      Permutation::parse("4321"),   Permutation::parse("321654"), Permutation::parse("421653"),
      Permutation::parse("431652"), Permutation::parse("521643"), Permutation::parse("531642")};
  r.passed = basis == expected;
  r.detail = "basis through length " + std::to_string(depth) + ": " + perms_str(basis);
}

void staircase_321_4123(CriterionResult& r, const AcceptanceOptions& o) {
  const auto stair =
      staircase_counts(StaircaseKind::increasing, cls("Av(21)"), cls("set(1)"), std::nullopt, 10, enum_options(o))
          .sequence.counts;
  const auto direct = enumerate_class(cls("Av(321,4123)"), 10, enum_options(o)).sequence.counts;
  auto series = rational_series({1, -2}, {1, -3, 1}, 11);
  const auto fib = oracle::odd_fibonacci(11);
  const double ratio = stair[10].convert_to<double>() / stair[9].convert_to<double>();
  const double target = 1.0 + std::numbers::phi;
  r.passed = stair == direct && stair == series && series == fib && std::abs(ratio - target) < kRatioTolerance;
  r.detail = "counts " + join_counts(stair) + "; ratio " + format_real(ratio) + " vs 1+phi " + format_real(target);
}

void spectral_agreement(CriterionResult& r, const AcceptanceOptions&) {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> gr(0.1, 10.0);
  double worst = 0.0;
  for (std::size_t t = 1; t <= 50; ++t) {
    for (const auto kind : {StaircaseKind::increasing, StaircaseKind::spiral}) {
      const double x = gr(rng);
      const double y = gr(rng);
      const double off = std::sqrt(x * y);
      const double closed = toeplitz_eigenvalues(ToeplitzSpec<double>{off, x + y, off, t}).front();
      const double iterated = top_eigenvalue(staircase_gamma<double>(kind, x, y, t));
      worst = std::max(worst, std::abs(closed - iterated));
    }
  }
  std::uniform_real_distribution<double> entry(0.0, 3.0);
  Eigen::MatrixXd g(6, 5);
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = entry(rng);
  }
  const double base = top_eigenvalue(g);
  double worst_perm = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::PermutationMatrix<Eigen::Dynamic> rows(g.rows());
    Eigen::PermutationMatrix<Eigen::Dynamic> cols(g.cols());
    rows.setIdentity();
    cols.setIdentity();
    std::shuffle(rows.indices().data(), rows.indices().data() + rows.size(), rng);
    std::shuffle(cols.indices().data(), cols.indices().data() + cols.size(), rng);
    const Eigen::MatrixXd shuffled = rows * g * cols;
    worst_perm = std::max(worst_perm, std::abs(top_eigenvalue(shuffled) - base));
  }
  r.passed = worst < kSpectralTolerance && worst_perm < kSpectralTolerance;
  std::ostringstream d;
  d << "max |closed - iterated| " << worst << " over t <= 50; max permutation drift " << worst_perm;
  r.detail = d.str();
}

void staircase_formula(CriterionResult& r, const AcceptanceOptions&) {
  bool exact = true;
  bool increasing = true;
  double prev = -1.0;
  for (std::size_t t = 1; t <= 1000; ++t) {
    const double v = t_step_staircase_gr(1.0, 1.0, t);
    exact = exact && v == 2.0 + 2.0 * std::cos(std::numbers::pi / static_cast<double>(t + 1));
    increasing = increasing && v > prev;
    prev = v;
  }
  const double far = t_step_staircase_gr(1.0, 1.0, 1'000'000 - 4);
  const bool limit = std::abs(far - 4.0) < kLimitTolerance;
  const bool bound = merge_gr_bound(1.0, 1.0) == 4.0;
  r.passed = exact && increasing && limit && bound;
  std::ostringstream d;
  d << "closed form " << (exact ? "exact" : "differs") << ", " << (increasing ? "strictly increasing" : "not increasing")
    << " for t <= 1000, |gr(10^6-4) - 4| = " << std::abs(far - 4.0) << ", merge bound(1,1) = "
    << format_real(merge_gr_bound(1.0, 1.0));
  r.detail = d.str();
}

void growth_constants(CriterionResult& r, const AcceptanceOptions&) {
  const double a = merge_gr_bound(1.0, 8.0);
  const double a_expected = 9.0 + 4.0 * std::sqrt(2.0);
  Eigen::MatrixXd juxtaposition(1, 2);
  juxtaposition << 1.0, 1.0;
  const double two = top_eigenvalue(juxtaposition);
  const double b = merge_gr_bound(two, 1.0);
  const double b_expected = 3.0 + 2.0 * std::sqrt(2.0);
  r.passed = std::abs(a - a_expected) < kConstantTolerance && std::abs(b - b_expected) < kConstantTolerance;
  r.detail = "merge bound(1,8) = " + format_real(a) + ", gr of [1 1] = " + format_real(two) +
             ", merge bound(2,1) = " + format_real(b);
}

void prop2_check(CriterionResult& r, const AcceptanceOptions& o) {
  const auto rows = prop2_inequality_check(cls("Av(12)"), cls("Av(21)"), 1, 8, enum_options(o));
  bool ok = rows.size() == 9;
  for (const auto& row : rows) ok = ok && row.holds && row.right == row.merge_count * row.binomial_sum;
  ok = ok && rows[4].upper_bound_sum == 70;
  r.passed = ok;
  r.detail = "n = 8: " + rows.back().upper_bound_sum.str() + " <= " + rows.back().right.str();
}

std::size_t count_failures(const Enumeration& e, const std::function<bool(const Permutation&)>& pred,
                           std::optional<Permutation>& witness) {
  std::size_t bad = 0;
  for (const auto& level : e.members) {
    for (const auto& p : level) {
      if (!pred(p)) {
        if (!witness) witness = p;
        ++bad;
      }
    }
  }
  return bad;
}

void staircase_merge_containment(CriterionResult& r, const AcceptanceOptions& o) {
  const auto c21 = cls("Av(21)");
  const auto c12 = cls("Av(12)");
  std::optional<Permutation> witness;
  std::size_t checked = 0;
  const auto inc = staircase_counts(StaircaseKind::increasing, c21, c21, std::nullopt, 8, enum_options(o, true));
  std::size_t bad = count_failures(inc, [&](const Permutation& p) { return merge_member(c21, c21, p); }, witness);
  for (const auto& level : inc.members) checked += level.size();
  for (std::size_t t = 1; t <= 3; ++t) {
    const auto spiral = staircase_counts(StaircaseKind::spiral, c21, c12, t, 8, enum_options(o, true));
    bad += count_failures(spiral, [&](const Permutation& p) { return merge_member(c21, c12, p); }, witness);
    for (const auto& level : spiral.members) checked += level.size();
  }
  r.passed = bad == 0;
  r.detail = std::to_string(checked) + " staircase members checked, " + std::to_string(bad) + " outside the merge" +
             (witness ? " (first " + witness->str() + ")" : "");
}

void split_spot_check(CriterionResult& r, const AcceptanceOptions& o) {
  const auto c = cls("Av(21)");
  const auto d = cls("Av(312)");
  const auto e = enumerate_class(cls("Av(4312)"), 8, enum_options(o, true));
  std::optional<Permutation> witness;
  const std::size_t bad = count_failures(e, [&](const Permutation& p) { return merge_member(c, d, p); }, witness);
  r.passed = bad == 0;
  r.detail = "Av(4312) counts " + join_counts(e.sequence.counts) + "; " + std::to_string(bad) + " outside the merge" +
             (witness ? " (first " + witness->str() + ")" : "");
}

void skew_staircase_containments(CriterionResult& r, const AcceptanceOptions& o) {
  const std::vector<Permutation> small{Permutation{1}, Permutation{1, 2}, Permutation{2, 1}};
  const Permutation one{1};
  std::size_t total_bad = 0;
  auto run = [&](const ClassExpr& c, const ClassExpr& d, const Permutation& forbidden, const std::string& tag) {
    const auto e = staircase_counts(StaircaseKind::increasing, c, d, std::nullopt, 8, enum_options(o, true));
    std::optional<Permutation> witness;
    const std::size_t bad =
        count_failures(e, [&](const Permutation& p) { return avoids(forbidden, p); }, witness);
    total_bad += bad;
    r.notes.push_back(tag + ": staircase(inc," + c.str() + "," + d.str() + ") vs Av(" + forbidden.str() +
                      "): " + std::to_string(bad) + " violations" + (witness ? ", first " + witness->str() : ""));
  };
  for (const auto& alpha : small) {
    for (const auto& gamma : small) {
      const auto c = ClassExpr::avoid({skew_sum(alpha, one)});
      const auto d = ClassExpr::avoid({skew_sum(one, gamma)});
      run(c, d, skew_sum(skew_sum(alpha, one), gamma), "alpha=" + alpha.str() + " gamma=" + gamma.str());
    }
  }
  for (const char* beta_text : {"1", "21", "213"}) {
    const Permutation beta = Permutation::parse(beta_text);
    run(cls("Av(21)"), ClassExpr::avoid({beta}), skew_sum(one, beta),
        std::string("beta=") + beta_text + (is_sum_indecomposable(beta) ? "" : " (sum decomposable)"));
  }
  r.passed = total_bad == 0;
  r.detail = "12 staircases through n = 8, " + std::to_string(total_bad) + " violations";
}

void fekete_check(CriterionResult& r, const AcceptanceOptions& o) {
  const auto a = enumerate_class(cls("Av(321)"), 10, enum_options(o)).sequence;
  const auto b = enumerate_class(cls("sumclose(Av(12))"), 10, enum_options(o)).sequence;
  const bool ok = check_supermultiplicative(a).empty() && check_supermultiplicative(b).empty() &&
                  oracle::supermultiplicative_violations(a.counts).empty() &&
                  oracle::supermultiplicative_violations(b.counts).empty();
  r.passed = ok;
  r.detail = "Av(321) " + join_counts(a.counts) + "; layered " + join_counts(b.counts);
}

void decreasing_staircase_experiment(CriterionResult& r, const AcceptanceOptions& o) {
  const auto c = cls("Av(12)");
  std::vector<std::vector<BigInt>> by_t;
  for (std::size_t t = 1; t <= 4; ++t) {
    by_t.push_back(staircase_counts(StaircaseKind::increasing, c, c, t, 12, enum_options(o)).sequence.counts);
    r.notes.push_back("t=" + std::to_string(t) + ": " + join_counts(by_t.back()));
  }
  const auto proxy_seq = staircase_counts(StaircaseKind::increasing, c, c, std::nullopt, 12, enum_options(o)).sequence;
  by_t.push_back(proxy_seq.counts);
  r.notes.push_back("t=n: " + join_counts(proxy_seq.counts));
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < by_t.size(); ++i) {
    for (std::size_t n = 0; n <= 12; ++n) monotone = monotone && by_t[i][n] <= by_t[i + 1][n];
  }
  const bool super = check_supermultiplicative(proxy_seq).empty();
  const auto growth = growth_estimates(proxy_seq, false);
  std::string roots = "n-th roots of t=n counts:";
  for (std::size_t n = 1; n <= 12; ++n) roots += " " + format_real(growth.nth_roots[n]);
  r.notes.push_back(roots);
  r.passed = monotone && super;
  r.detail = std::string(monotone ? "monotone in t" : "NOT monotone in t") + ", t=n counts " +
             (super ? "supermultiplicative" : "NOT supermultiplicative") + ", lower bound " +
             format_real(growth.nth_roots[12]) + " (no limit asserted)";
}

struct Criterion {
  const char* name;
  void (*run)(CriterionResult&, const AcceptanceOptions&);
};

constexpr Criterion kCriteria[kCriterionCount] = {
    {"containment-oracle", containment_oracle},
    {"catalan", catalan_check},
    {"merge-identity", merge_identity},
    {"skew-merged-basis", skew_merged_basis},
    {"six-element-basis", six_element_basis},
    {"staircase-av321-4123", staircase_321_4123},
    {"spectral-agreement", spectral_agreement},
    {"staircase-formula", staircase_formula},
    {"growth-constants", growth_constants},
    {"finite-intersection-inequality", prop2_check},
    {"staircase-in-merge", staircase_merge_containment},
    {"split-spot-check", split_spot_check},
    {"skew-staircase-containment", skew_staircase_containments},
    {"fekete", fekete_check},
    {"decreasing-staircase-experiment", decreasing_staircase_experiment},
};

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  if (id < 1 || id > kCriterionCount) throw DomainError("criterion id must be 1.." + std::to_string(kCriterionCount));
  const auto& c = kCriteria[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = c.name;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(r, options);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<int> ids = options.only;
  if (ids.empty()) {
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  }
  std::vector<CriterionResult> results;
  for (const int id : ids) {
    results.push_back(run_criterion(id, options));
    if (options.on_result) options.on_result(results.back());
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  std::string out = std::string(r.passed ? "PASS" : "FAIL") + " " + (r.id < 10 ? " " : "") + std::to_string(r.id) +
                    " " + r.name + ": " + r.detail + "\n";
  for (const auto& note : r.notes) out += "      " + note + "\n";
  return out;
}

}  // namespace permgrid::checks

#include "permgrid/checks/oracles.hpp"

#include <algorithm>
#include <numeric>

#include "permgrid/errors.hpp"

namespace permgrid::oracle {

std::vector<int> normalize(const std::vector<int>& seq) {
  std::vector<int> out(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    int rank = 1;
    for (const int x : seq) rank += x < seq[i];
    out[i] = rank;
  }
  return out;
}

namespace {

std::vector<int> as_ints(const Permutation& p) { return {p.begin(), p.end()}; }

}  // namespace

bool naive_contains(const Permutation& pattern, const Permutation& host) {
  const std::size_t k = pattern.size();
  const std::size_t n = host.size();
  if (k > n) return false;
  const std::vector<int> target = as_ints(pattern);
  // Walk all k-subsets of positions as bitmasks.
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    std::vector<int> sub;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1u) sub.push_back(host[i]);
    }
    if (normalize(sub) == target) return true;
  }
  return false;
}

std::vector<Permutation> naive_permutations(std::size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(std::span<const int>(v));
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

bool naive_member(const ClassExpr& c, const std::vector<int>& seq) {
  const auto norm = normalize(seq);
  const Permutation p{std::span<const int>(norm)};
  switch (c.kind()) {
    case ClassKind::avoid:
      return std::none_of(c.basis().begin(), c.basis().end(),
                          [&](const Permutation& b) { return naive_contains(b, p); });
    case ClassKind::finite_set:
      return std::find(c.members().begin(), c.members().end(), p) != c.members().end();
    default:
      throw DomainError("naive membership covers avoidance classes and finite sets only");
  }
}

bool naive_merge_member(const ClassExpr& c, const ClassExpr& d, const Permutation& p) {
  const std::size_t n = p.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> red;
    std::vector<int> blue;
    for (std::size_t i = 0; i < n; ++i) (mask >> i & 1u ? blue : red).push_back(p[i]);
    if (naive_member(c, red) && naive_member(d, blue)) return true;
  }
  return false;
}

namespace {

// All nondecreasing sequences 1 = s_0 <= ... <= s_parts = n + 1.
void divisions(std::size_t parts, std::size_t n, std::vector<std::size_t>& cur,
               std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == parts) {
    cur.push_back(n + 1);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::size_t v = cur.back(); v <= n + 1; ++v) {
    cur.push_back(v);
    divisions(parts, n, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<std::size_t>> all_divisions(std::size_t parts, std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur{1};
  divisions(parts, n, cur, out);
  return out;
}

}  // namespace

bool naive_gridding_exists(const GridMatrix& m, const Permutation& p) {
  const std::size_t n = p.size();
  const auto cols = all_divisions(m.columns(), n);
  const auto rows = all_divisions(m.rows(), n);
  for (const auto& c : cols) {
    for (const auto& r : rows) {
      bool ok = true;
      for (std::size_t k = 1; k <= m.columns() && ok; ++k) {
        for (std::size_t l = 1; l <= m.rows() && ok; ++l) {
          std::vector<int> content;
          for (std::size_t pos = c[k - 1]; pos < c[k]; ++pos) {
            const std::size_t v = p[pos - 1];
            if (v >= r[l - 1] && v < r[l]) content.push_back(static_cast<int>(v));
          }
          if (m.is_empty_cell(k, l)) {
            ok = content.empty();
          } else {
            ok = naive_member(*m.cell(k, l), content);
          }
        }
      }
      if (ok) return true;
    }
  }
  return false;
}

std::vector<BigInt> catalan(std::size_t n) {
  std::vector<BigInt> c{1};
  for (std::size_t k = 0; k < n; ++k) {
    BigInt next = 0;
    for (std::size_t i = 0; i <= k; ++i) next += c[i] * c[k - i];
    c.push_back(next);
  }
  return c;
}

std::vector<BigInt> odd_fibonacci(std::size_t terms) {
  std::vector<BigInt> fib{0, 1};
  while (fib.size() < 2 * terms + 1) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
  std::vector<BigInt> out;
  for (std::size_t n = 0; n < terms; ++n) out.push_back(n == 0 ? BigInt(1) : fib[2 * n - 1]);
  return out;
}

std::vector<BigRational> series_long_division(const std::vector<BigInt>& numerator,
                                              const std::vector<BigInt>& denominator, std::size_t terms) {
  if (denominator.empty() || denominator[0] == 0) throw DomainError("zero constant term");
  std::vector<BigRational> remainder(std::max(terms, numerator.size()) + denominator.size(), 0);
  for (std::size_t i = 0; i < numerator.size(); ++i) remainder[i] = numerator[i];
  std::vector<BigRational> quotient;
  for (std::size_t k = 0; k < terms; ++k) {
    const BigRational q = remainder[k] / BigRational(denominator[0]);
    quotient.push_back(q);
    for (std::size_t j = 0; j < denominator.size(); ++j) remainder[k + j] -= q * BigRational(denominator[j]);
  }
  return quotient;
}

std::vector<std::pair<std::size_t, std::size_t>> supermultiplicative_violations(const std::vector<BigInt>& counts) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t m = 1; m < counts.size(); ++m) {
    for (std::size_t n = m; m + n < counts.size(); ++n) {
      if (counts[m] * counts[n] > counts[m + n]) out.emplace_back(m, n);
    }
  }
  return out;
}

double dense_top_eigenvalue(const Eigen::MatrixXd& gamma) {
  return dense_eigenvalues(gamma * gamma.transpose()).front();
}

std::vector<double> dense_eigenvalues(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace permgrid::oracle

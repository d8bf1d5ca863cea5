#include "permgrid/merge.hpp"

#include <array>

#include "permgrid/errors.hpp"
#include "permgrid/search_budget.hpp"

namespace permgrid {

std::string Coloring::str() const {
  std::string s;
  s.reserve(labels.size());
  for (auto c : labels) s.push_back(c == Color::red ? 'R' : 'B');
  return s;
}

Coloring Coloring::parse(std::string_view text) {
  Coloring c;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == 'R') {
      c.labels.push_back(Color::red);
    } else if (text[i] == 'B') {
      c.labels.push_back(Color::blue);
    } else {
      throw ParseError("coloring must be a string over {R,B}", i);
    }
  }
  return c;
}

namespace {

using Value = Permutation::value_type;

class ColoringSearch {
 public:
  ColoringSearch(const ClassExpr& c, const ClassExpr& d, const Permutation& p, CacheMode mode)
      : c_(c), d_(d), p_(p), mode_(mode), labels_(p.size()) {}

  std::optional<Coloring> run() {
    if (!extend(0)) return std::nullopt;
    return Coloring{labels_};
  }

 private:
  // Colors entry i and onward; each color class is checked as soon as it grows,
  // which is sound because classes are downward closed.
  bool extend(std::size_t i) {
    counter_.tick();
    if (i == p_.size()) return true;
    for (const Color color : {Color::red, Color::blue}) {
      auto& values = color == Color::red ? red_ : blue_;
      auto& size = color == Color::red ? red_size_ : blue_size_;
      values[size++] = p_[i];
      const ClassExpr& cls = color == Color::red ? c_ : d_;
      if (member(cls, Permutation::pattern_of({values.data(), size}), mode_)) {
        labels_[i] = color;
        if (extend(i + 1)) return true;
      }
      --size;
    }
    return false;
  }

  const ClassExpr& c_;
  const ClassExpr& d_;
  const Permutation& p_;
  CacheMode mode_;
  std::vector<Color> labels_;
  std::array<Value, Permutation::max_length> red_{};
  std::array<Value, Permutation::max_length> blue_{};
  std::size_t red_size_ = 0;
  std::size_t blue_size_ = 0;
  NodeCounter counter_;
};

Permutation color_class(const Permutation& p, const Coloring& coloring, Color which) {
  std::array<Value, Permutation::max_length> values{};
  std::size_t m = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (coloring.labels[i] == which) values[m++] = p[i];
  }
  return Permutation::pattern_of({values.data(), m});
}

}  // namespace

std::optional<Coloring> merge_coloring(const ClassExpr& c, const ClassExpr& d, const Permutation& p,
                                       CacheMode mode) {
  const CacheMode sub = mode == CacheMode::off ? CacheMode::off : CacheMode::full;
  if (!member(c, Permutation{}, sub) || !member(d, Permutation{}, sub)) return std::nullopt;
  return ColoringSearch(c, d, p, sub).run();
}

bool validate_coloring(const ClassExpr& c, const ClassExpr& d, const Permutation& p, const Coloring& coloring) {
  if (coloring.labels.size() != p.size()) return false;
  return member(c, color_class(p, coloring, Color::red), CacheMode::off) &&
         member(d, color_class(p, coloring, Color::blue), CacheMode::off);
}

BigInt merge_upper_bound(const CountSequence& c_counts, const CountSequence& d_counts, std::size_t n) {
  if (c_counts.counts.size() <= n || d_counts.counts.size() <= n) {
    throw DomainError("count sequences must cover lengths 0.." + std::to_string(n));
  }
  BigInt total = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    const BigInt b = binomial(n, i);
    total += b * b * c_counts.counts[i] * d_counts.counts[n - i];
  }
  return total;
}

std::vector<Prop2Row> prop2_inequality_check(const ClassExpr& c, const ClassExpr& d, std::size_t m,
                                             std::size_t max_len, const EnumerateOptions& options) {
  const auto overlap = max_intersection_length(c, d, m + 1);
  if (overlap.exceeds_cutoff) {
    throw DomainError("the classes share a permutation longer than m = " + std::to_string(m));
  }
  const auto c_counts = enumerate_class(c, max_len, options).sequence;
  const auto d_counts = enumerate_class(d, max_len, options).sequence;
  const auto merged = enumerate_class(ClassExpr::merge(c, d), max_len, options).sequence;
  std::vector<Prop2Row> rows;
  for (std::size_t n = 0; n <= max_len; ++n) {
    Prop2Row row;
    row.n = n;
    row.upper_bound_sum = merge_upper_bound(c_counts, d_counts, n);
    row.merge_count = merged.counts[n];
    for (std::size_t i = 0; i <= std::min(2 * m, n); ++i) row.binomial_sum += binomial(n, i);
    row.right = row.merge_count * row.binomial_sum;
    row.holds = row.upper_bound_sum <= row.right;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace permgrid

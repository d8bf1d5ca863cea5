#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permgrid {

/// A permutation in one-line notation, values 1..n. Stored inline; the empty
/// permutation is the default-constructed value.
class Permutation {
 public:
  using value_type = std::uint8_t;
  static constexpr std::size_t max_length = 31;

  Permutation() = default;
  Permutation(std::initializer_list<int> values);
  explicit Permutation(std::span<const int> values);

  static Permutation identity(std::size_t n);
  static Permutation decreasing(std::size_t n);

  /// No bijection check; callers guarantee the invariant.
  static Permutation from_values_unchecked(std::span<const value_type> values) noexcept;

  /// Order-isomorphic normalization of a sequence of distinct values.
  static Permutation pattern_of(std::span<const value_type> values);

  /// Accepts a digit string ("32514"), a comma list ("10,3,2,1,...") or a
  /// bracketed comma list ("[10,3,...]"). The empty string is the empty
  /// permutation.
  static Permutation parse(std::string_view text);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  /// 0-based position, 1-based value.
  value_type operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const value_type> values() const noexcept { return {values_.data(), size_}; }
  const value_type* begin() const noexcept { return values_.data(); }
  const value_type* end() const noexcept { return values_.data() + size_; }

  /// Digit string for n <= 9, comma list otherwise.
  std::string str() const;
  /// Always comma separated.
  std::string comma_str() const;

  friend bool operator==(const Permutation& a, const Permutation& b) noexcept {
    return a.size_ == b.size_ && std::equal(a.begin(), a.end(), b.begin());
  }
  /// Shortlex: shorter first, then lexicographic on values.
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) noexcept {
    if (a.size_ != b.size_) return a.size_ <=> b.size_;
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
  }

  std::size_t hash() const noexcept;

 private:
  std::array<value_type, max_length> values_{};
  value_type size_ = 0;
};

bool contains(const Permutation& pattern, const Permutation& host);
inline bool avoids(const Permutation& pattern, const Permutation& host) { return !contains(pattern, host); }

Permutation direct_sum(const Permutation& a, const Permutation& b);
Permutation skew_sum(const Permutation& a, const Permutation& b);

enum class Symmetry { reverse, complement, inverse };
Permutation apply_symmetry(const Permutation& p, Symmetry which);
inline Permutation reverse(const Permutation& p) { return apply_symmetry(p, Symmetry::reverse); }
inline Permutation complement(const Permutation& p) { return apply_symmetry(p, Symmetry::complement); }
inline Permutation inverse(const Permutation& p) { return apply_symmetry(p, Symmetry::inverse); }

/// Maximal decomposition into sum-indecomposable components; empty for ε.
std::vector<Permutation> sum_decompose(const Permutation& p);
std::vector<Permutation> skew_decompose(const Permutation& p);
bool is_sum_indecomposable(const Permutation& p);
bool is_skew_indecomposable(const Permutation& p);

/// Remove the entry at 0-based position i and renormalize.
Permutation delete_at(const Permutation& p, std::size_t i);
/// Insert value v (1..n+1) at 0-based position q (0..n); values >= v shift up.
Permutation insert_at(const Permutation& p, std::size_t q, std::size_t v);

/// Sorted, duplicate free.
std::vector<Permutation> one_point_deletions(const Permutation& p);
std::vector<Permutation> one_point_extensions(const Permutation& p);

/// All permutations of length n in lexicographic order.
std::vector<Permutation> all_permutations(std::size_t n);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept { return p.hash(); }
};

}  // namespace permgrid

template <>
struct std::hash<permgrid::Permutation> {
  std::size_t operator()(const permgrid::Permutation& p) const noexcept { return p.hash(); }
};

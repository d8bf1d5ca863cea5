#include "permgrid/permutation.hpp"

#include <cctype>
#include <numeric>

#include "permgrid/errors.hpp"

namespace permgrid {

namespace {

void check_length(std::size_t n) {
  if (n > Permutation::max_length) {
    throw DomainError("permutation length " + std::to_string(n) + " exceeds the supported maximum of " +
                      std::to_string(Permutation::max_length));
  }
}

template <typename Int>
Permutation checked(std::span<const Int> values) {
  check_length(values.size());
  std::array<bool, Permutation::max_length + 1> seen{};
  std::array<Permutation::value_type, Permutation::max_length> buf{};
  const auto n = static_cast<long long>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto v = static_cast<long long>(values[i]);
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
      throw ValidationError("not a permutation of 1.." + std::to_string(n));
    }
    seen[static_cast<std::size_t>(v)] = true;
    buf[i] = static_cast<Permutation::value_type>(v);
  }
  return Permutation::from_values_unchecked({buf.data(), values.size()});
}

}  // namespace

Permutation::Permutation(std::initializer_list<int> values)
    : Permutation(std::span<const int>(values.begin(), values.size())) {}

Permutation::Permutation(std::span<const int> values) { *this = checked(values); }

Permutation Permutation::from_values_unchecked(std::span<const value_type> values) noexcept {
  Permutation p;
  std::copy(values.begin(), values.end(), p.values_.begin());
  p.size_ = static_cast<value_type>(values.size());
  return p;
}

Permutation Permutation::identity(std::size_t n) {
  check_length(n);
  Permutation p;
  std::iota(p.values_.begin(), p.values_.begin() + n, value_type{1});
  p.size_ = static_cast<value_type>(n);
  return p;
}

Permutation Permutation::decreasing(std::size_t n) {
  check_length(n);
  Permutation p;
  for (std::size_t i = 0; i < n; ++i) p.values_[i] = static_cast<value_type>(n - i);
  p.size_ = static_cast<value_type>(n);
  return p;
}

Permutation Permutation::pattern_of(std::span<const value_type> values) {
  check_length(values.size());
  Permutation p;
  const std::size_t n = values.size();
  for (std::size_t i = 0; i < n; ++i) {
    value_type rank = 1;
    for (std::size_t j = 0; j < n; ++j) rank += values[j] < values[i];
    p.values_[i] = rank;
  }
  p.size_ = static_cast<value_type>(n);
  return p;
}

Permutation Permutation::parse(std::string_view text) {
  std::string_view body = text;
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw ParseError("unterminated '['", text.size());
    body = body.substr(1, body.size() - 2);
  }
  std::vector<int> values;
  if (body.find(',') == std::string_view::npos) {
    for (std::size_t i = 0; i < body.size(); ++i) {
      const char ch = body[i];
      if (ch < '1' || ch > '9') throw ParseError(std::string("unexpected character '") + ch + "'", i);
      values.push_back(ch - '0');
    }
  } else {
    std::size_t i = 0;
    while (i <= body.size()) {
      const std::size_t comma = std::min(body.find(',', i), body.size());
      std::string_view item = body.substr(i, comma - i);
      while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
      while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
      if (item.empty() || item.size() > 3 ||
          !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw ParseError("expected a positive integer", i);
      }
      values.push_back(std::stoi(std::string(item)));
      i = comma + 1;
    }
  }
  return Permutation(std::span<const int>(values));
}

std::string Permutation::str() const {
  if (size_ > 9) return comma_str();
  std::string s;
  for (auto v : values()) s.push_back(static_cast<char>('0' + v));
  return s;
}

std::string Permutation::comma_str() const {
  std::string s;
  for (std::size_t i = 0; i < size_; ++i) {
    if (i) s.push_back(',');
    s += std::to_string(values_[i]);
  }
  return s;
}

std::size_t Permutation::hash() const noexcept {
  // FNV-1a over length and values.
  std::uint64_t h = 1469598103934665603ULL ^ size_;
  for (auto v : values()) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

bool contains(const Permutation& pattern, const Permutation& host) {
  const std::size_t k = pattern.size();
  const std::size_t n = host.size();
  if (k == 0) return true;
  if (k > n) return false;

  // For entry j of the pattern, the earlier entries holding the nearest smaller
  // and nearest larger values bound the admissible host values.
  std::array<int, Permutation::max_length> below{};
  std::array<int, Permutation::max_length> above{};
  for (std::size_t j = 0; j < k; ++j) {
    below[j] = -1;
    above[j] = -1;
    for (std::size_t i = 0; i < j; ++i) {
      if (pattern[i] < pattern[j] && (below[j] < 0 || pattern[i] > pattern[static_cast<std::size_t>(below[j])])) {
        below[j] = static_cast<int>(i);
      }
      if (pattern[i] > pattern[j] && (above[j] < 0 || pattern[i] < pattern[static_cast<std::size_t>(above[j])])) {
        above[j] = static_cast<int>(i);
      }
    }
  }

  std::array<std::size_t, Permutation::max_length> pos{};
  std::size_t j = 0;
  std::size_t next = 0;  // first host position to try for entry j
  while (true) {
    bool placed = false;
    const int lo = below[j] < 0 ? 0 : host[pos[static_cast<std::size_t>(below[j])]];
    const int hi = above[j] < 0 ? static_cast<int>(n) + 1 : host[pos[static_cast<std::size_t>(above[j])]];
    for (std::size_t i = next; i + (k - j) <= n; ++i) {
      const int v = host[i];
      if (v > lo && v < hi) {
        pos[j] = i;
        placed = true;
        break;
      }
    }
    if (placed) {
      if (++j == k) return true;
      next = pos[j - 1] + 1;
    } else {
      if (j == 0) return false;
      --j;
      next = pos[j] + 1;
    }
  }
}

Permutation direct_sum(const Permutation& a, const Permutation& b) {
  check_length(a.size() + b.size());
  std::array<Permutation::value_type, Permutation::max_length> buf{};
  std::size_t i = 0;
  for (auto v : a) buf[i++] = v;
  for (auto v : b) buf[i++] = static_cast<Permutation::value_type>(v + a.size());
  return Permutation::from_values_unchecked({buf.data(), i});
}

Permutation skew_sum(const Permutation& a, const Permutation& b) {
  check_length(a.size() + b.size());
  std::array<Permutation::value_type, Permutation::max_length> buf{};
  std::size_t i = 0;
  for (auto v : a) buf[i++] = static_cast<Permutation::value_type>(v + b.size());
  for (auto v : b) buf[i++] = v;
  return Permutation::from_values_unchecked({buf.data(), i});
}

Permutation apply_symmetry(const Permutation& p, Symmetry which) {
  const std::size_t n = p.size();
  std::array<Permutation::value_type, Permutation::max_length> buf{};
  for (std::size_t i = 0; i < n; ++i) {
    switch (which) {
      case Symmetry::reverse:
        buf[i] = p[n - 1 - i];
        break;
      case Symmetry::complement:
        buf[i] = static_cast<Permutation::value_type>(n + 1 - p[i]);
        break;
      case Symmetry::inverse:
        buf[p[i] - 1] = static_cast<Permutation::value_type>(i + 1);
        break;
    }
  }
  return Permutation::from_values_unchecked({buf.data(), n});
}

namespace {

// Cuts after prefixes that occupy the lowest (sum) or highest (skew) values.
std::vector<Permutation> decompose(const Permutation& p, bool skew) {
  std::vector<Permutation> parts;
  const std::size_t n = p.size();
  std::size_t start = 0;
  std::size_t extreme = skew ? n + 1 : 0;
  for (std::size_t i = 0; i < n; ++i) {
    extreme = skew ? std::min<std::size_t>(extreme, p[i]) : std::max<std::size_t>(extreme, p[i]);
    const bool cut = skew ? extreme == n - i : extreme == i + 1;
    if (cut) {
      parts.push_back(Permutation::pattern_of(p.values().subspan(start, i + 1 - start)));
      start = i + 1;
    }
  }
  return parts;
}

}  // namespace

std::vector<Permutation> sum_decompose(const Permutation& p) { return decompose(p, false); }
std::vector<Permutation> skew_decompose(const Permutation& p) { return decompose(p, true); }
bool is_sum_indecomposable(const Permutation& p) { return sum_decompose(p).size() == 1; }
bool is_skew_indecomposable(const Permutation& p) { return skew_decompose(p).size() == 1; }

Permutation delete_at(const Permutation& p, std::size_t i) {
  std::array<Permutation::value_type, Permutation::max_length> buf{};
  const auto removed = p[i];
  std::size_t m = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j == i) continue;
    buf[m++] = static_cast<Permutation::value_type>(p[j] - (p[j] > removed));
  }
  return Permutation::from_values_unchecked({buf.data(), m});
}

Permutation insert_at(const Permutation& p, std::size_t q, std::size_t v) {
  check_length(p.size() + 1);
  std::array<Permutation::value_type, Permutation::max_length> buf{};
  std::size_t m = 0;
  for (std::size_t j = 0; j <= p.size(); ++j) {
    if (j == q) buf[m++] = static_cast<Permutation::value_type>(v);
    if (j < p.size()) buf[m++] = static_cast<Permutation::value_type>(p[j] + (p[j] >= v));
  }
  return Permutation::from_values_unchecked({buf.data(), m});
}

std::vector<Permutation> one_point_deletions(const Permutation& p) {
  std::vector<Permutation> out;
  out.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out.push_back(delete_at(p, i));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Permutation> one_point_extensions(const Permutation& p) {
  std::vector<Permutation> out;
  const std::size_t n = p.size();
  out.reserve((n + 1) * (n + 1));
  for (std::size_t q = 0; q <= n; ++q) {
    for (std::size_t v = 1; v <= n + 1; ++v) out.push_back(insert_at(p, q, v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Permutation> all_permutations(std::size_t n) {
  check_length(n);
  std::vector<Permutation> out;
  std::vector<Permutation::value_type> v(n);
  std::iota(v.begin(), v.end(), Permutation::value_type{1});
  do {
    out.push_back(Permutation::from_values_unchecked(v));
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

}  // namespace permgrid

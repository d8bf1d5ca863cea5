#include "permgrid/grid.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <unordered_set>

#include "permgrid/errors.hpp"
#include "permgrid/search_budget.hpp"

namespace permgrid {

GridMatrix::GridMatrix(std::size_t columns, std::size_t rows)
    : columns_(columns), rows_(rows), cells_(columns * rows) {
  if (columns == 0 || rows == 0) throw DomainError("grid matrix needs at least one row and one column");
}

GridMatrix GridMatrix::from_rows(const std::vector<std::vector<std::optional<ClassExpr>>>& rows_top_first) {
  if (rows_top_first.empty() || rows_top_first.front().empty()) throw DomainError("empty grid matrix");
  const std::size_t u = rows_top_first.size();
  const std::size_t t = rows_top_first.front().size();
  GridMatrix m(t, u);
  for (std::size_t i = 0; i < u; ++i) {
    if (rows_top_first[i].size() != t) throw DomainError("grid rows differ in length");
    for (std::size_t k = 0; k < t; ++k) m.set_cell(k + 1, u - i, rows_top_first[i][k]);
  }
  return m;
}

const std::optional<ClassExpr>& GridMatrix::cell(std::size_t column, std::size_t row) const {
  if (column < 1 || column > columns_ || row < 1 || row > rows_) throw DomainError("cell index out of range");
  return cells_[(column - 1) * rows_ + (row - 1)];
}

void GridMatrix::set_cell(std::size_t column, std::size_t row, std::optional<ClassExpr> cls) {
  if (column < 1 || column > columns_ || row < 1 || row > rows_) throw DomainError("cell index out of range");
  cells_[(column - 1) * rows_ + (row - 1)] = std::move(cls);
}

bool GridMatrix::is_empty_cell(std::size_t column, std::size_t row) const {
  const auto& c = cell(column, row);
  return !c || c->is_trivially_empty_cell();
}

std::string GridMatrix::grid_str() const {
  std::string s = "grid([";
  for (std::size_t row = rows_; row >= 1; --row) {
    s += row == rows_ ? "[" : ",[";
    for (std::size_t col = 1; col <= columns_; ++col) {
      if (col > 1) s += ",";
      const auto& c = cell(col, row);
      s += c ? c->str() : "E";
    }
    s += "]";
  }
  return s + "])";
}

std::string GridMatrix::str() const {
  if (!origin_) return grid_str();
  return std::string("staircase(") + (origin_->kind == StaircaseKind::increasing ? "inc" : "spiral") + "," +
         origin_->c_class.str() + "," + (origin_->d_class ? origin_->d_class->str() : "E") + "," +
         std::to_string(origin_->steps) + ")";
}

// ---------------------------------------------------------------------------
// Gridding search
// ---------------------------------------------------------------------------

namespace {

using Value = Permutation::value_type;

/// Column-by-column search. Each column's entries are split into contiguous
/// value blocks, one per nonempty cell of that column; every block adds unary
/// bounds on the row divisions, which must stay jointly satisfiable by a
/// monotone sequence. Failed states are memoized under a canonical key: only
/// the divisions later columns can touch, each ranked against the values still
/// to be placed.
class GriddingSearch {
 public:
  static constexpr std::size_t kMaxDivisions = Permutation::max_length + 1;

  GriddingSearch(const GridMatrix& m, const Permutation& p, CacheMode mode)
      : m_(m), p_(p), mode_(mode), n_(p.size()), t_(m.columns()), u_(m.rows()) {
    if (u_ + 1 > kMaxDivisions) throw DomainError("grid has too many rows");
    rows_of_.resize(t_);
    for (std::size_t k = 0; k < t_; ++k) {
      for (std::size_t l = 0; l < u_; ++l) {
        if (!m.is_empty_cell(k + 1, l + 1)) rows_of_[k].push_back(l);
      }
    }
    touched_.resize(t_ + 1);
    std::vector<bool> seen(u_ + 1, false);
    for (std::size_t k = t_; k-- > 0;) {
      for (auto l : rows_of_[k]) seen[l] = seen[l + 1] = true;
      for (std::size_t j = 0; j <= u_; ++j) {
        if (seen[j]) touched_[k].push_back(j);
      }
    }
    // rank_[s][x]: how many of p[s..n) are below x.
    rank_.assign(n_ + 1, std::vector<Value>(n_ + 2, 0));
    for (std::size_t s = 0; s <= n_; ++s) {
      for (std::size_t i = s; i < n_; ++i) {
        for (std::size_t x = p_[i] + 1; x <= n_ + 1; ++x) ++rank_[s][x];
      }
    }
    divisions_.assign(t_ + 1, 0);
  }

  std::optional<Gridding> run() {
    Bounds b;
    b.lo.fill(1);
    b.hi.fill(static_cast<Value>(n_ + 1));
    b.hi[0] = 1;
    b.lo[u_] = static_cast<Value>(n_ + 1);
    if (!propagate(b)) return std::nullopt;
    if (!column(0, 0, b)) return std::nullopt;
    Gridding g;
    for (std::size_t k = 0; k <= t_; ++k) g.column_divisions.push_back(divisions_[k] + 1);
    for (std::size_t j = 0; j <= u_; ++j) g.row_divisions.push_back(final_.lo[j]);
    return g;
  }

 private:
  struct Bounds {
    std::array<Value, kMaxDivisions> lo;
    std::array<Value, kMaxDivisions> hi;
  };

  // Monotone closure of the bounds; false if no division sequence fits.
  bool propagate(Bounds& b) const {
    for (std::size_t j = 1; j <= u_; ++j) b.lo[j] = std::max(b.lo[j], b.lo[j - 1]);
    for (std::size_t j = u_; j-- > 0;) b.hi[j] = std::min(b.hi[j], b.hi[j + 1]);
    for (std::size_t j = 0; j <= u_; ++j) {
      if (b.lo[j] > b.hi[j]) return false;
    }
    return true;
  }

  std::string key(std::size_t k, std::size_t s, const Bounds& b) const {
    const auto& rank = rank_[s];
    std::string key;
    key.reserve(2 + 2 * touched_[k].size());
    key.push_back(static_cast<char>(k));
    key.push_back(static_cast<char>(s));
    for (auto j : touched_[k]) {
      key.push_back(static_cast<char>(rank[b.lo[j]]));
      key.push_back(static_cast<char>(rank[b.hi[j]]));
    }
    return key;
  }

  bool column(std::size_t k, std::size_t s, const Bounds& b) {
    counter_.tick();
    if (k == t_) {
      if (s != n_) return false;
      final_ = b;
      return true;
    }
    std::string memo_key = key(k, s, b);
    if (failed_.count(memo_key)) return false;

    // Widest feasible column first; a wider column only adds constraints, so
    // the feasible widths form a prefix.
    const bool last = k + 1 == t_;
    std::size_t widest = s;
    if (last) {
      widest = n_;
    } else if (!rows_of_[k].empty()) {
      while (widest < n_ && splittable(k, s, widest + 1, b)) ++widest;
    }
    for (std::size_t e = widest + 1; e-- > s;) {
      if (last && e != n_) break;
      divisions_[k] = s;
      divisions_[k + 1] = e;
      std::array<Value, Permutation::max_length> sorted{};
      std::copy(p_.begin() + s, p_.begin() + e, sorted.begin());
      std::sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(e - s));
      if (split(k, s, e, sorted, 0, 0, b, true)) return true;
    }
    failed_.insert(std::move(memo_key));
    return false;
  }

  bool splittable(std::size_t k, std::size_t s, std::size_t e, const Bounds& b) {
    std::array<Value, Permutation::max_length> sorted{};
    std::copy(p_.begin() + s, p_.begin() + e, sorted.begin());
    std::sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(e - s));
    return split(k, s, e, sorted, 0, 0, b, false);
  }

  // Assigns sorted[from..) to the blocks for rows_of_[k][block..]; with
  // `descend` each complete split continues into the next column.
  bool split(std::size_t k, std::size_t s, std::size_t e, const std::array<Value, Permutation::max_length>& sorted,
             std::size_t block, std::size_t from, const Bounds& b, bool descend) {
    const auto& rows = rows_of_[k];
    const std::size_t m = e - s;
    if (block == rows.size()) {
      if (from != m) return false;
      return descend ? column(k + 1, e, b) : true;
    }
    const bool last_block = block + 1 == rows.size();
    const std::size_t row = rows[block];
    const ClassExpr& cls = *m_.cell(k + 1, row + 1);
    for (std::size_t to = last_block ? m : from; to <= m; ++to) {
      counter_.tick();
      Bounds nb = b;
      if (to > from) {
        const Value vmin = sorted[from];
        const Value vmax = sorted[to - 1];
        nb.hi[row] = std::min(nb.hi[row], vmin);
        nb.lo[row + 1] = std::max(nb.lo[row + 1], static_cast<Value>(vmax + 1));
        if (!propagate(nb)) break;
        std::array<Value, Permutation::max_length> content{};
        std::size_t c = 0;
        for (std::size_t i = s; i < e; ++i) {
          if (p_[i] >= vmin && p_[i] <= vmax) content[c++] = p_[i];
        }
        if (!member(cls, Permutation::pattern_of({content.data(), c}), mode_)) break;
      }
      if (split(k, s, e, sorted, block + 1, to, nb, descend)) return true;
    }
    return false;
  }

  const GridMatrix& m_;
  const Permutation& p_;
  CacheMode mode_;
  std::size_t n_;
  std::size_t t_;
  std::size_t u_;
  std::vector<std::vector<std::size_t>> rows_of_;
  std::vector<std::vector<std::size_t>> touched_;
  std::vector<std::vector<Value>> rank_;
  std::vector<std::size_t> divisions_;
  std::unordered_set<std::string> failed_;
  Bounds final_{};
  NodeCounter counter_;
};

/// Matrices whose nonempty cells all sit at (k, k) or (k + 1, k), with one
/// more column than rows: the shape of every increasing staircase. After
/// column k the search only needs (c, r), the next position and the division
/// below row k + 1, so it runs as a breadth-first walk over those pairs.
class BandSearch {
 public:
  static bool applies(const GridMatrix& m) {
    if (m.columns() != m.rows() + 1) return false;
    for (std::size_t k = 1; k <= m.columns(); ++k) {
      for (std::size_t l = 1; l <= m.rows(); ++l) {
        if (l != k && l + 1 != k && !m.is_empty_cell(k, l)) return false;
      }
    }
    return true;
  }

  BandSearch(const GridMatrix& m, const Permutation& p, CacheMode mode)
      : p_(p), mode_(mode), n_(p.size()), t_(m.columns()), width_(n_ + 2) {
    upper_.resize(t_ + 1);
    lower_.resize(t_ + 1);
    for (std::size_t k = 1; k <= t_; ++k) {
      if (k <= m.rows() && !m.is_empty_cell(k, k)) upper_[k] = &*m.cell(k, k);
      if (k >= 2 && !m.is_empty_cell(k, k - 1)) lower_[k] = &*m.cell(k, k - 1);
    }
    uniform_ = true;
    for (std::size_t k = 2; k + 1 <= t_; ++k) {
      uniform_ = uniform_ && same(upper_[k], upper_[1]) && same(lower_[k], lower_[2]);
    }
    uniform_ = uniform_ && (t_ < 3 || same(lower_[t_], lower_[2]));
    // last_below_[r]: one past the last position holding a value below r.
    last_below_.assign(n_ + 2, 0);
    for (std::size_t r = 2; r <= n_ + 1; ++r) {
      std::size_t last = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (p_[i] < r) last = i + 1;
      }
      last_below_[r] = last;
    }
  }

  std::optional<Gridding> run() {
    if (n_ == 0) return Gridding{std::vector<std::size_t>(t_ + 1, 1), std::vector<std::size_t>(t_, 1)};
    const std::size_t states = (n_ + 1) * width_;
    parent_.assign(t_ + 1, std::vector<int>(states, -1));
    std::vector<char> seen(states, 0);
    std::vector<std::size_t> frontier{index(0, 1)};
    seen[index(0, 1)] = 1;
    for (std::size_t k = 1; k <= t_ && !frontier.empty(); ++k) {
      std::vector<std::size_t> next;
      if (!uniform_) std::fill(seen.begin(), seen.end(), 0);
      for (const auto from : frontier) {
        counter_.tick();
        const std::size_t c = from / width_;
        const std::size_t r = from % width_;
        if (k == t_) {
          if (r != n_ + 1 || !part_fits(lower_[k], c, n_, r, true)) continue;
          parent_[k][index(n_, n_ + 1)] = static_cast<int>(from);
          return witness(k);
        }
        if (expand(k, c, r, from, next, seen)) return witness(k);
      }
      frontier = std::move(next);
    }
    return std::nullopt;
  }

 private:
  static bool same(const ClassExpr* a, const ClassExpr* b) {
    if (!a || !b) return a == b;
    return a == b || a->str() == b->str();
  }

  std::size_t index(std::size_t c, std::size_t r) const { return c * width_ + r; }

  // Entries at positions [c, e) below r (lower part) or at least r (upper part).
  bool part_fits(const ClassExpr* cls, std::size_t c, std::size_t e, std::size_t r, bool lower) const {
    std::array<Value, Permutation::max_length> values{};
    std::size_t m = 0;
    for (std::size_t i = c; i < e; ++i) {
      if ((p_[i] < r) == lower) values[m++] = p_[i];
    }
    if (m == 0) return true;
    if (!cls) return false;
    return member(*cls, Permutation::pattern_of({values.data(), m}), mode_);
  }

  // Column k from state (c, r); true once the whole permutation is placed.
  bool expand(std::size_t k, std::size_t c, std::size_t r, std::size_t from, std::vector<std::size_t>& next,
              std::vector<char>& seen) {
    const bool top_row = k + 1 == t_;
    std::size_t below = 0;
    std::size_t above = 0;
    std::size_t max_value = 0;
    for (std::size_t e = c; e <= n_; ++e) {
      if (e > c) {
        counter_.tick();
        const Value v = p_[e - 1];
        max_value = std::max<std::size_t>(max_value, v);
        if (v < r) {
          ++below;
          if (!part_fits(lower_[k], c, e, r, true)) break;
        } else {
          ++above;
          if (!part_fits(upper_[k], c, e, r, false)) break;
        }
      }
      if (e < last_below_[r]) continue;
      const std::size_t r_min = std::max(r, max_value + 1);
      auto visit = [&](std::size_t r_next) {
        const std::size_t to = index(e, r_next);
        if (seen[to]) return false;
        seen[to] = 1;
        parent_[k][to] = static_cast<int>(from);
        if (e == n_ && r_next == n_ + 1) return true;
        next.push_back(to);
        return false;
      };
      if (top_row || e == n_) {
        if (visit(n_ + 1)) return true;
        continue;
      }
      // Only the set of later values below the division matters.
      if (visit(r_min)) return true;
      std::array<Value, Permutation::max_length> later{};
      std::size_t m = 0;
      for (std::size_t i = e; i < n_; ++i) {
        if (p_[i] >= r_min) later[m++] = p_[i];
      }
      std::sort(later.begin(), later.begin() + static_cast<std::ptrdiff_t>(m));
      for (std::size_t j = 0; j < m; ++j) {
        if (visit(later[j] + 1u)) return true;
      }
    }
    return false;
  }

  Gridding witness(std::size_t layer) const {
    std::vector<std::size_t> path(t_ + 1, index(n_, n_ + 1));
    std::size_t at = index(n_, n_ + 1);
    for (std::size_t k = layer; k >= 1; --k) {
      path[k] = at;
      at = static_cast<std::size_t>(parent_[k][at]);
    }
    path[0] = at;
    Gridding g;
    g.column_divisions.push_back(1);
    for (std::size_t k = 1; k <= t_; ++k) g.column_divisions.push_back(path[k] / width_ + 1);
    g.row_divisions.push_back(1);
    for (std::size_t k = 1; k < t_; ++k) g.row_divisions.push_back(path[k] % width_);
    return g;
  }

  const Permutation& p_;
  CacheMode mode_;
  std::size_t n_;
  std::size_t t_;
  std::size_t width_;
  bool uniform_ = true;
  std::vector<const ClassExpr*> upper_;
  std::vector<const ClassExpr*> lower_;
  std::vector<std::size_t> last_below_;
  std::vector<std::vector<int>> parent_;
  NodeCounter counter_;
};

}  // namespace

std::optional<Gridding> gridding_exists(const GridMatrix& m, const Permutation& p, CacheMode mode) {
  const CacheMode sub = mode == CacheMode::off ? CacheMode::off : CacheMode::full;
  if (BandSearch::applies(m)) return BandSearch(m, p, sub).run();
  return GriddingSearch(m, p, sub).run();
}

bool validate_gridding(const GridMatrix& m, const Permutation& p, const Gridding& g) {
  const std::size_t n = p.size();
  const auto& c = g.column_divisions;
  const auto& r = g.row_divisions;
  if (c.size() != m.columns() + 1 || r.size() != m.rows() + 1) return false;
  if (c.front() != 1 || r.front() != 1 || c.back() != n + 1 || r.back() != n + 1) return false;
  if (!std::is_sorted(c.begin(), c.end()) || !std::is_sorted(r.begin(), r.end())) return false;
  for (std::size_t k = 1; k <= m.columns(); ++k) {
    for (std::size_t l = 1; l <= m.rows(); ++l) {
      std::vector<Value> content;
      for (std::size_t pos = c[k - 1]; pos < c[k]; ++pos) {
        const std::size_t v = p[pos - 1];
        if (v >= r[l - 1] && v < r[l]) content.push_back(static_cast<Value>(v));
      }
      if (m.is_empty_cell(k, l)) {
        if (!content.empty()) return false;
      } else if (!member(*m.cell(k, l), Permutation::pattern_of(content), CacheMode::off)) {
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Staircases
// ---------------------------------------------------------------------------

GridMatrix build_increasing_staircase(const ClassExpr& c, const std::optional<ClassExpr>& d, std::size_t steps) {
  if (steps < 1) throw DomainError("a staircase needs at least one step");
  GridMatrix m(steps + 1, steps);
  std::vector<CellIndex> path;
  for (std::size_t l = 1; l <= steps; ++l) {
    m.set_cell(l, l, c);
    m.set_cell(l + 1, l, d);
    path.push_back({l, l});
    path.push_back({l + 1, l});
  }
  m.set_path(std::move(path));
  m.set_origin({StaircaseKind::increasing, c, d, steps});
  return m;
}

GridMatrix build_spiral_staircase(const ClassExpr& c, const std::optional<ClassExpr>& d, std::size_t steps) {
  if (steps < 1) throw DomainError("a staircase needs at least one step");
  // Diagonal slots d_1 = ceil(t/2), then +1, -1, +2, -2, ...
  std::vector<long> slot(steps + 2);
  const long first = static_cast<long>((steps + 1) / 2);
  for (std::size_t i = 1; i <= steps + 1; ++i) {
    const long offset = i % 2 == 0 ? static_cast<long>(i / 2) : -static_cast<long>((i - 1) / 2);
    slot[i] = first + offset;
  }
  const long min_col = *std::min_element(slot.begin() + 1, slot.end());
  const long shift = 1 - min_col;
  GridMatrix m(steps + 1, steps);
  std::vector<CellIndex> path;
  for (std::size_t i = 1; i <= steps; ++i) {
    const auto row = static_cast<std::size_t>(slot[i]);
    const CellIndex c_cell{static_cast<std::size_t>(slot[i] + shift), row};
    const CellIndex d_cell{static_cast<std::size_t>(slot[i + 1] + shift), row};
    m.set_cell(c_cell.column, c_cell.row, c);
    m.set_cell(d_cell.column, d_cell.row, d);
    path.push_back(c_cell);
    path.push_back(d_cell);
  }
  m.set_path(std::move(path));
  m.set_origin({StaircaseKind::spiral, c, d, steps});
  return m;
}

GridMatrix build_staircase(const StaircaseSpec& spec) {
  return spec.kind == StaircaseKind::increasing ? build_increasing_staircase(spec.c_class, spec.d_class, spec.steps)
                                                : build_spiral_staircase(spec.c_class, spec.d_class, spec.steps);
}

StaircaseValidation validate_staircase(const GridMatrix& m) {
  std::vector<CellIndex> path(m.path().begin(), m.path().end());
  if (path.empty()) {
    for (std::size_t k = 1; k <= m.columns(); ++k) {
      for (std::size_t l = 1; l <= m.rows(); ++l) {
        if (!m.is_empty_cell(k, l)) path.push_back({k, l});
      }
    }
  }
  if (path.empty()) return {false, "no labeled cells"};

  auto on_path = [&](std::size_t k, std::size_t l) {
    return std::find(path.begin(), path.end(), CellIndex{k, l}) != path.end();
  };
  auto occupied = [&](std::size_t k, std::size_t l) { return on_path(k, l) || !m.is_empty_cell(k, l); };
  auto label = [&](const CellIndex& c) {
    const auto& cls = m.cell(c.column, c.row);
    return cls ? cls->str() : std::string("E");
  };
  auto column_count = [&](std::size_t k) {
    std::size_t count = 0;
    for (std::size_t l = 1; l <= m.rows(); ++l) count += occupied(k, l);
    return count;
  };
  auto row_count = [&](std::size_t l) {
    std::size_t count = 0;
    for (std::size_t k = 1; k <= m.columns(); ++k) count += occupied(k, l);
    return count;
  };

  for (std::size_t k = 1; k <= m.columns(); ++k) {
    for (std::size_t l = 1; l <= m.rows(); ++l) {
      if (!m.is_empty_cell(k, l) && !on_path(k, l)) {
        return {false, "nonempty cell (" + std::to_string(k) + "," + std::to_string(l) + ") is not labeled"};
      }
    }
  }

  const std::string c_label = label(path[0]);
  if (column_count(path[0].column) != 1) return {false, "bullet 1: cell 1 is not alone in its column"};
  const std::string d_label = path.size() > 1 ? label(path[1]) : std::string();
  for (std::size_t idx = 1; idx < path.size(); ++idx) {
    const std::size_t number = idx + 1;  // 1-based cell label
    const CellIndex& cur = path[idx];
    const CellIndex& prev = path[idx - 1];
    if (number % 2 == 0) {
      if (label(cur) != d_label) return {false, "bullet 2: cell " + std::to_string(number) + " is not D"};
      if (cur.row != prev.row) {
        return {false, "bullet 2: cell " + std::to_string(number) + " does not share a row with cell " +
                           std::to_string(number - 1)};
      }
      if (row_count(cur.row) != 2) {
        return {false, "bullet 2: row of cell " + std::to_string(number) + " holds other nonempty cells"};
      }
    } else {
      if (label(cur) != c_label) return {false, "bullet 3: cell " + std::to_string(number) + " is not C"};
      if (cur.column != prev.column) {
        return {false, "bullet 3: cell " + std::to_string(number) + " does not share a column with cell " +
                           std::to_string(number - 1)};
      }
      if (column_count(cur.column) != 2) {
        return {false, "bullet 3: column of cell " + std::to_string(number) + " holds other nonempty cells"};
      }
    }
  }
  return {true, "ok"};
}

Enumeration staircase_counts(StaircaseKind kind, const ClassExpr& c, const std::optional<ClassExpr>& d,
                             std::optional<std::size_t> steps, std::size_t max_len, const EnumerateOptions& options) {
  const std::string kind_name = kind == StaircaseKind::increasing ? "inc" : "spiral";
  const std::string label = "staircase(" + kind_name + "," + c.str() + "," + (d ? d->str() : "E") + "," +
                            (steps ? std::to_string(*steps) : "n") + ")";
  if (steps) {
    const GridMatrix m = build_staircase({kind, c, d, *steps});
    return enumerate_downset(
        label, [&](const Permutation& p) { return gridding_exists(m, p, CacheMode::nested_only).has_value(); },
        max_len, options);
  }
  std::vector<GridMatrix> by_length;
  for (std::size_t t = 1; t <= std::max<std::size_t>(max_len, 1); ++t) by_length.push_back(build_staircase({kind, c, d, t}));
  return enumerate_downset(
      label,
      [&](const Permutation& p) {
        const std::size_t t = std::max<std::size_t>(p.size(), 1);
        return gridding_exists(by_length[t - 1], p, CacheMode::nested_only).has_value();
      },
      max_len, options);
}

}  // namespace permgrid

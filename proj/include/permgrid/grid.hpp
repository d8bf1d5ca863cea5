#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "permgrid/class_expr.hpp"
#include "permgrid/enumerator.hpp"

namespace permgrid {

/// Cartesian cell coordinates, both 1-based: column from the left, row from the bottom.
struct CellIndex {
  std::size_t column = 1;
  std::size_t row = 1;
  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

enum class StaircaseKind { increasing, spiral };

struct StaircaseSpec {
  StaircaseKind kind = StaircaseKind::increasing;
  ClassExpr c_class;
  std::optional<ClassExpr> d_class;  ///< nullopt is the empty class
  std::size_t steps = 1;
};

/// A matrix of classes indexed in Cartesian coordinates. A cell without a
/// class is empty; so is a finite set holding only ε.
class GridMatrix {
 public:
  GridMatrix(std::size_t columns, std::size_t rows);

  /// Rows given top row first (reading order).
  static GridMatrix from_rows(const std::vector<std::vector<std::optional<ClassExpr>>>& rows_top_first);

  std::size_t columns() const noexcept { return columns_; }
  std::size_t rows() const noexcept { return rows_; }

  const std::optional<ClassExpr>& cell(std::size_t column, std::size_t row) const;
  void set_cell(std::size_t column, std::size_t row, std::optional<ClassExpr> cls);
  bool is_empty_cell(std::size_t column, std::size_t row) const;

  /// Cells in construction order (staircase labels). Empty unless set.
  std::span<const CellIndex> path() const noexcept { return path_; }
  void set_path(std::vector<CellIndex> path) { path_ = std::move(path); }

  const std::optional<StaircaseSpec>& origin() const noexcept { return origin_; }
  void set_origin(StaircaseSpec spec) { origin_ = std::move(spec); }

  /// DSL form: staircase(...) when built by a staircase builder, grid(...) otherwise.
  std::string str() const;
  /// Always the explicit grid([...]) form, top row first.
  std::string grid_str() const;

 private:
  std::size_t columns_;
  std::size_t rows_;
  std::vector<std::optional<ClassExpr>> cells_;  // column-major
  std::vector<CellIndex> path_;
  std::optional<StaircaseSpec> origin_;
};

/// Column divisions c_1..c_{t+1} and row divisions r_1..r_{u+1}, 1-based,
/// with c_1 = r_1 = 1 and c_{t+1} = r_{u+1} = n + 1.
struct Gridding {
  std::vector<std::size_t> column_divisions;
  std::vector<std::size_t> row_divisions;
};

std::optional<Gridding> gridding_exists(const GridMatrix& m, const Permutation& p, CacheMode mode = CacheMode::full);

/// Checks a gridding directly against the cell classes.
bool validate_gridding(const GridMatrix& m, const Permutation& p, const Gridding& g);

GridMatrix build_increasing_staircase(const ClassExpr& c, const std::optional<ClassExpr>& d, std::size_t steps);
GridMatrix build_spiral_staircase(const ClassExpr& c, const std::optional<ClassExpr>& d, std::size_t steps);
GridMatrix build_staircase(const StaircaseSpec& spec);

struct StaircaseValidation {
  bool ok = false;
  std::string diagnostic;
};

/// Checks the staircase axioms along the matrix path (column-major order
/// when no path is recorded).
StaircaseValidation validate_staircase(const GridMatrix& m);

/// Counts of the staircase grid class by length. With `steps` unset, length n
/// is counted in the n-step restriction (the infinite-staircase proxy).
Enumeration staircase_counts(StaircaseKind kind, const ClassExpr& c, const std::optional<ClassExpr>& d,
                             std::optional<std::size_t> steps, std::size_t max_len,
                             const EnumerateOptions& options = {});

}  // namespace permgrid

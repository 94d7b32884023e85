#pragma once

#include "checkerdisc/types.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace checkerdisc {

using CellMatrix = Eigen::Matrix<std::int8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// A +-1 coloring of the n x n cells of [0, n)^2, extended by zero outside.
/// Entry (j, k) colors the half-open cell [j, j+1) x [k, k+1).
class Coloring {
 public:
  /// Throws std::invalid_argument unless values is square, non-empty and +-1.
  explicit Coloring(CellMatrix values);

  [[nodiscard]] Index n() const { return values_.rows(); }
  [[nodiscard]] const CellMatrix& values() const { return values_; }

  /// Cell value, or 0 for cells outside the grid.
  [[nodiscard]] int cell(Index j, Index k) const {
    if (j < 0 || k < 0 || j >= n() || k >= n()) return 0;
    return values_(j, k);
  }

  /// Value at a point of the plane (zero outside [0, n)^2).
  [[nodiscard]] int eval(const Vec2& p) const { return cell(floor_index(p.x()), floor_index(p.y())); }

  /// Sum of row k over cells 0..j-1, with j clamped to [0, n]. Rows outside
  /// the grid are zero.
  [[nodiscard]] double row_prefix(Index j, Index k) const {
    if (k < 0 || k >= n()) return 0.0;
    j = std::clamp<Index>(j, 0, n());
    return prefix_(j, k);
  }

  [[nodiscard]] long total() const { return total_; }

  [[nodiscard]] Coloring negated() const;

  friend bool operator==(const Coloring& a, const Coloring& b) { return a.values_ == b.values_; }

 private:
  CellMatrix values_;
  Eigen::MatrixXd prefix_;
  long total_ = 0;
};

enum class ColoringKind { constant, chessboard, stripes, random };
enum class Axis { x, y };

struct ColoringSpec {
  ColoringKind kind = ColoringKind::constant;
  Axis axis = Axis::x;
  Index period = 1;
  std::uint64_t seed = 0;
};

/// Deterministic generator. Random colorings draw from std::mt19937_64(seed),
/// one bit per cell in column-major (j fastest) order.
Coloring generate(const ColoringSpec& spec, Index n);

Coloring generate_constant(Index n);
Coloring generate_chessboard(Index n);
Coloring generate_stripes(Index n, Axis axis, Index period);
Coloring generate_random(Index n, std::uint64_t seed);

ColoringKind parse_coloring_kind(std::string_view name);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Text format: "n\n" followed by n rows of '+'/'-'. Line k+2 holds row k,
/// character j holds cell (j, k). Lines end in '\n'.
std::string save(const Coloring& c);
Coloring load(std::string_view text);

Coloring load_file(const std::string& path);

}  // namespace checkerdisc

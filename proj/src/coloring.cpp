#include "checkerdisc/coloring.hpp"

#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

namespace checkerdisc {

Coloring::Coloring(CellMatrix values) : values_(std::move(values)) {
  if (values_.rows() == 0 || values_.rows() != values_.cols()) {
    throw std::invalid_argument("coloring must be a non-empty square grid");
  }
  const Index size = n();
  prefix_.resize(size + 1, size);
  for (Index k = 0; k < size; ++k) {
    double run = 0.0;
    prefix_(0, k) = 0.0;
    for (Index j = 0; j < size; ++j) {
      const int v = values_(j, k);
      if (v != 1 && v != -1) throw std::invalid_argument("coloring values must be +1 or -1");
      run += v;
      prefix_(j + 1, k) = run;
    }
    total_ += static_cast<long>(run);
  }
}

Coloring Coloring::negated() const { return Coloring(CellMatrix(-values_)); }

Coloring generate_constant(Index n) {
  if (n < 1) throw std::invalid_argument("coloring size must be at least 1");
  return Coloring(CellMatrix::Ones(n, n));
}

Coloring generate_chessboard(Index n) {
  if (n < 1) throw std::invalid_argument("coloring size must be at least 1");
  CellMatrix v(n, n);
  for (Index k = 0; k < n; ++k)
    for (Index j = 0; j < n; ++j) v(j, k) = ((j + k) % 2 == 0) ? 1 : -1;
  return Coloring(std::move(v));
}

Coloring generate_stripes(Index n, Axis axis, Index period) {
  if (n < 1) throw std::invalid_argument("coloring size must be at least 1");
  if (period < 1) throw std::invalid_argument("stripe period must be at least 1");
  CellMatrix v(n, n);
  for (Index k = 0; k < n; ++k) {
    for (Index j = 0; j < n; ++j) {
      const Index coord = axis == Axis::x ? j : k;
      v(j, k) = ((coord / period) % 2 == 0) ? 1 : -1;
    }
  }
  return Coloring(std::move(v));
}

Coloring generate_random(Index n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("coloring size must be at least 1");
  std::mt19937_64 rng(seed);
  CellMatrix v(n, n);
  for (Index k = 0; k < n; ++k)
    for (Index j = 0; j < n; ++j) v(j, k) = (rng() >> 63) ? 1 : -1;
  return Coloring(std::move(v));
}

Coloring generate(const ColoringSpec& spec, Index n) {
  switch (spec.kind) {
    case ColoringKind::constant: return generate_constant(n);
    case ColoringKind::chessboard: return generate_chessboard(n);
    case ColoringKind::stripes: return generate_stripes(n, spec.axis, spec.period);
    case ColoringKind::random: return generate_random(n, spec.seed);
  }
  throw std::invalid_argument("unknown coloring kind");
}

ColoringKind parse_coloring_kind(std::string_view name) {
  if (name == "constant") return ColoringKind::constant;
  if (name == "chessboard") return ColoringKind::chessboard;
  if (name == "stripes") return ColoringKind::stripes;
  if (name == "random") return ColoringKind::random;
  throw std::invalid_argument("unknown coloring kind: " + std::string(name));
}

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

std::string save(const Coloring& c) {
  const Index n = c.n();
  std::string out = std::to_string(n);
  out.push_back('\n');
  out.reserve(out.size() + static_cast<std::size_t>(n * (n + 1)));
  for (Index k = 0; k < n; ++k) {
    for (Index j = 0; j < n; ++j) out.push_back(c.values()(j, k) > 0 ? '+' : '-');
    out.push_back('\n');
  }
  return out;
}

Coloring load(std::string_view text) {
  std::size_t pos = 0;
  int line = 1;

  auto next_line = [&](std::string_view& out) -> bool {
    if (pos >= text.size()) return false;
    const std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      out = text.substr(pos);
      pos = text.size();
    } else {
      out = text.substr(pos, end - pos);
      pos = end + 1;
    }
    return true;
  };

  std::string_view header;
  if (!next_line(header) || header.empty()) throw ParseError("missing size header", 1, 1);
  long n = 0;
  const auto [ptr, ec] = std::from_chars(header.data(), header.data() + header.size(), n);
  if (ec != std::errc() || ptr != header.data() + header.size()) {
    const int col = static_cast<int>(ptr - header.data()) + 1;
    throw ParseError("malformed size header", 1, col);
  }
  if (n < 1) throw ParseError("size must be positive", 1, 1);

  CellMatrix v(n, n);
  for (long k = 0; k < n; ++k) {
    ++line;
    std::string_view row;
    if (!next_line(row)) throw ParseError("missing row", line, 1);
    for (long j = 0; j < static_cast<long>(row.size()); ++j) {
      const char ch = row[static_cast<std::size_t>(j)];
      if (j >= n) throw ParseError("row too long", line, static_cast<int>(j) + 1);
      if (ch == '+') {
        v(j, k) = 1;
      } else if (ch == '-') {
        v(j, k) = -1;
      } else {
        throw ParseError(std::string("illegal character '") + ch + "'", line, static_cast<int>(j) + 1);
      }
    }
    if (static_cast<long>(row.size()) < n) {
      throw ParseError("row too short", line, static_cast<int>(row.size()) + 1);
    }
  }
  if (pos < text.size()) throw ParseError("trailing data", line + 1, 1);
  return Coloring(std::move(v));
}

Coloring load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read coloring file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load(ss.str());
}

}  // namespace checkerdisc

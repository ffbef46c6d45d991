#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "toral/bigint.hpp"
#include "toral/mat2.hpp"

namespace toral {

/// Cell (i, j) is [i/q, (i+1)/q) x [j/q, (j+1)/q); i indexes the first coordinate.
struct Cell {
  long i{0};
  long j{0};
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Finite union of (1/q)-grid cells on the torus. Cells are kept sorted.
class GridSet {
 public:
  GridSet() = default;
  /// Throws InvalidArgument for q < 1, cells out of range or repeated cells.
  GridSet(long q, std::vector<Cell> cells);

  static GridSet full(long q);
  /// [x0,x1) x [y0,y1); endpoints must be multiples of 1/q (ResolutionMismatch).
  static GridSet rect(const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1, long q);

  long q() const { return q_; }
  const std::vector<Cell>& cells() const { return cells_; }
  bool empty() const { return cells_.empty(); }
  bool contains(long i, long j) const { return member_[static_cast<std::size_t>(i * q_ + j)] != 0; }
  /// Row-major membership table of size q*q (index i*q + j).
  const std::vector<std::uint8_t>& membership() const { return member_; }
  Rat measure() const { return make_rat(static_cast<long>(cells_.size()), q_ * q_); }

  /// Same set at resolution q*factor.
  GridSet refine(long factor) const;
  /// The set -G (reflection through the origin).
  GridSet reflect() const;
  /// Intersection with a set of the same resolution.
  GridSet intersect(const GridSet& other) const;

  /// Cell edges of length 1/q separating a member from a non-member, on the
  /// torus: horizontal edges lie between (i,j) and (i,j+1), vertical edges
  /// between (i,j) and (i+1,j).
  long horizontal_edges() const;
  long vertical_edges() const;

  friend bool operator==(const GridSet& l, const GridSet& r) { return l.q_ == r.q_ && l.cells_ == r.cells_; }

 private:
  long q_{1};
  std::vector<Cell> cells_;
  std::vector<std::uint8_t> member_{0};
};

/// "x0 x1 y0 y1 @ q" with rational endpoints (a leading "rect" is accepted).
GridSet parse_rect(std::string_view text);
/// {"q": q, "cells": [[i,j], ...]}.
GridSet gridset_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GridSet& g);

/// Fourier coefficient of the indicator: integral over G of chi_{-x}.
/// Absolute error below 1e-12 for q <= 4096.
std::complex<double> grid_fourier(const GridSet& g, const Vec2& x);

/// Fourier coefficient of the step function with value w[i*q+j] on cell (i,j).
std::complex<double> grid_fourier_weighted(long q, const std::vector<double>& w, const Vec2& x);

/// For primitive v, the pushforward of 1_A dxi under xi -> <v,xi> mod 1 has a
/// density g_A. Returns the exact integral of g_A(s) g_B(s) ds, which is
/// <P 1_A, P 1_B> for P the projection onto functions of <v,xi>. Resolutions
/// must agree.
Rat line_projection_inner(const GridSet& a, const GridSet& b, const Vec2& v);
/// |P 1_G|^2 for the projection along v.
inline Rat line_projection_norm2(const GridSet& g, const Vec2& v) { return line_projection_inner(g, g, v); }

}  // namespace toral

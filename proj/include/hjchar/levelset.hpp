#pragma once

#include <functional>
#include <vector>

#include "hjchar/grid.hpp"

namespace hjchar {

struct Segment {
  double x1a, x2a, x1b, x2b;
};

/// Marching-squares segments of {phi = 0}, with edge crossings placed by linear
/// interpolation. Nodes with phi >= 0 count as outside. Ambiguous saddle cells are
/// resolved by the sign of the cell-centre average. Cells touching a NaN node are
/// skipped.
std::vector<Segment> extract_zero_levelset(const Grid2DField& field);

/// Point predicate; true excludes the point from a comparison.
using PointMask = std::function<bool(double x1, double x2)>;

/// Symmetric Hausdorff distance between two segment sets, measured from segment
/// endpoints and midpoints of each set to the segments of the other. Points where
/// `mask` is true are ignored. Returns 0 when both sets are empty and +inf when
/// exactly one is.
double hausdorff_distance(const std::vector<Segment>& a, const std::vector<Segment>& b,
                          const PointMask& mask = {});

}  // namespace hjchar

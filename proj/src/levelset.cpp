#include "hjchar/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hjchar {

namespace {

struct Point {
  double x1, x2;
};

Point crossing(Point a, double fa, Point b, double fb) {
  const double s = fa / (fa - fb);
  return {a.x1 + s * (b.x1 - a.x1), a.x2 + s * (b.x2 - a.x2)};
}

}  // namespace

std::vector<Segment> extract_zero_levelset(const Grid2DField& field) {
  std::vector<Segment> out;
  const GridAxes& ax = field.axes;
  for (std::size_t j = 0; j + 1 < ax.n2; ++j) {
    for (std::size_t i = 0; i + 1 < ax.n1; ++i) {
      // corners counter-clockwise from bottom-left
      const Point p[4] = {{ax.x1(i), ax.x2(j)},
                          {ax.x1(i + 1), ax.x2(j)},
                          {ax.x1(i + 1), ax.x2(j + 1)},
                          {ax.x1(i), ax.x2(j + 1)}};
      const double f[4] = {field.at(i, j), field.at(i + 1, j), field.at(i + 1, j + 1),
                           field.at(i, j + 1)};
      if (std::isnan(f[0]) || std::isnan(f[1]) || std::isnan(f[2]) || std::isnan(f[3])) continue;
      int code = 0;
      for (int c = 0; c < 4; ++c) code |= (f[c] >= 0.0 ? 1 : 0) << c;
      if (code == 0 || code == 15) continue;

      // edge e joins corner e and corner (e + 1) % 4
      auto edge_point = [&](int e) { return crossing(p[e], f[e], p[(e + 1) % 4], f[(e + 1) % 4]); };
      auto cut = [&](int e0, int e1) {
        const Point a = edge_point(e0);
        const Point b = edge_point(e1);
        out.push_back({a.x1, a.x2, b.x1, b.x2});
      };

      std::vector<int> edges;
      for (int e = 0; e < 4; ++e) {
        const bool s0 = (code >> e) & 1;
        const bool s1 = (code >> ((e + 1) % 4)) & 1;
        if (s0 != s1) edges.push_back(e);
      }
      if (edges.size() == 2) {
        cut(edges[0], edges[1]);
      } else {
        // saddle: corners 0 and 2 share a sign
        const bool centre_positive = 0.25 * (f[0] + f[1] + f[2] + f[3]) >= 0.0;
        const bool corner0_positive = code & 1;
        if (centre_positive == corner0_positive) {
          // corner 0 and 2 are connected through the centre; isolate corners 1 and 3
          cut(0, 1);
          cut(2, 3);
        } else {
          cut(3, 0);
          cut(1, 2);
        }
      }
    }
  }
  return out;
}

namespace {

double point_segment_distance(Point q, const Segment& s) {
  const double dx = s.x1b - s.x1a;
  const double dy = s.x2b - s.x2a;
  const double len2 = dx * dx + dy * dy;
  double u = 0.0;
  if (len2 > 0.0) u = std::clamp(((q.x1 - s.x1a) * dx + (q.x2 - s.x2a) * dy) / len2, 0.0, 1.0);
  const double ex = s.x1a + u * dx - q.x1;
  const double ey = s.x2a + u * dy - q.x2;
  return std::sqrt(ex * ex + ey * ey);
}

double directed(const std::vector<Segment>& from, const std::vector<Segment>& to,
                const PointMask& mask) {
  double worst = 0.0;
  auto visit = [&](Point q) {
    if (mask && mask(q.x1, q.x2)) return;
    double best = std::numeric_limits<double>::infinity();
    for (const Segment& s : to) best = std::min(best, point_segment_distance(q, s));
    worst = std::max(worst, best);
  };
  for (const Segment& s : from) {
    visit({s.x1a, s.x2a});
    visit({s.x1b, s.x2b});
    visit({0.5 * (s.x1a + s.x1b), 0.5 * (s.x2a + s.x2b)});
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const std::vector<Segment>& a, const std::vector<Segment>& b,
                          const PointMask& mask) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  return std::max(directed(a, b, mask), directed(b, a, mask));
}

}  // namespace hjchar

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "hjchar/cli.hpp"

namespace hjchar::cli {

using nlohmann::json;

const char* const kFieldHeader = "x1,x2,t,value,converged,certificate_ok,trials_used,source";
const char* const kLevelSetHeader = "t,seg_id,x1a,x2a,x1b,x2b";

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field_csv(std::ostream& os, const Grid2DField& f, std::size_t stride) {
  stride = std::max<std::size_t>(1, stride);
  os << kFieldHeader << '\n';
  const std::string t = format_double(f.t);
  for (std::size_t j = 0; j < f.axes.n2; j += stride) {
    for (std::size_t i = 0; i < f.axes.n1; i += stride) {
      const std::size_t c = f.index(i, j);
      os << format_double(f.axes.x1(i)) << ',' << format_double(f.axes.x2(j)) << ',' << t << ','
         << format_double(f.values[c]) << ',' << int(f.converged[c]) << ','
         << int(f.certificate_ok[c]) << ',' << f.trials_used[c] << ',' << f.source << '\n';
    }
  }
}

void write_levelset_csv(std::ostream& os, const std::vector<double>& times,
                        const std::vector<std::vector<Segment>>& sets) {
  os << kLevelSetHeader << '\n';
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const std::string t = format_double(times[k]);
    for (std::size_t s = 0; s < sets[k].size(); ++s) {
      const Segment& g = sets[k][s];
      os << t << ',' << s << ',' << format_double(g.x1a) << ',' << format_double(g.x2a) << ','
         << format_double(g.x1b) << ',' << format_double(g.x2b) << '\n';
    }
  }
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "n,s";
  for (std::size_t i = 0; i < traj.dim; ++i) os << ",x" << i + 1;
  for (std::size_t i = 0; i < traj.dim; ++i) os << ",p" << i + 1;
  os << ",H\n";
  for (std::size_t n = 0; n <= traj.steps; ++n) {
    os << n << ',' << format_double(traj.times[n]);
    for (double v : traj.state(n)) os << ',' << format_double(v);
    for (double v : traj.costate(n)) os << ',' << format_double(v);
    os << ',' << format_double(traj.hamiltonian[n]) << '\n';
  }
}

json point_to_json(const PointSolution& s) {
  return {{"x", s.x},
          {"t", s.t},
          {"value", s.value},
          {"v_star", s.v_star},
          {"converged", s.converged},
          {"certificate_ok", s.certificate_ok},
          {"trials_used", s.trials_used},
          {"resamples", s.resamples},
          {"iterations", s.iterations},
          {"wall_time", s.wall_time},
          {"mode", to_string(s.mode)}};
}

namespace {

double percentile(std::vector<double> v, double q) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

json stats(const std::vector<double>& v) {
  if (v.empty()) return {{"count", 0}};
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  return {{"count", v.size()},
          {"median", percentile(v, 0.5)},
          {"mean", mean},
          {"max", *std::max_element(v.begin(), v.end())}};
}

}  // namespace

json field_summary(const Grid2DField& f) {
  std::size_t nan = 0, conv = 0, cert = 0, cert_among_conv = 0;
  std::vector<double> times;
  for (std::size_t c = 0; c < f.values.size(); ++c) {
    if (std::isnan(f.values[c])) ++nan;
    if (f.converged[c]) ++conv;
    if (f.certificate_ok[c]) ++cert;
    if (f.converged[c] && f.certificate_ok[c]) ++cert_among_conv;
    times.push_back(f.wall_time[c]);
  }
  const double n = static_cast<double>(f.values.size());
  return {{"t", f.t},
          {"points", f.values.size()},
          {"failed_points", nan},
          {"converged_rate", static_cast<double>(conv) / n},
          {"certificate_rate", static_cast<double>(cert) / n},
          {"certificate_rate_converged",
           conv ? static_cast<double>(cert_among_conv) / static_cast<double>(conv) : 0.0},
          {"point_time_s",
           {{"p50", percentile(times, 0.5)},
            {"p90", percentile(times, 0.9)},
            {"p99", percentile(times, 0.99)},
            {"max", percentile(times, 1.0)}}}};
}

json compare_fields(const Grid2DField& chr, const Grid2DField& lf,
                    const std::vector<Segment>& chr_set, const std::vector<Segment>& lf_set,
                    const std::vector<MaskDisk>& masks) {
  std::vector<double> kept, inside;
  std::size_t skipped = 0;
  for (std::size_t j = 0; j < chr.axes.n2; ++j) {
    for (std::size_t i = 0; i < chr.axes.n1; ++i) {
      const double a = chr.at(i, j);
      const double x1 = chr.axes.x1(i);
      const double x2 = chr.axes.x2(j);
      if (!std::isfinite(a)) {
        ++skipped;
        continue;
      }
      const double diff = std::fabs(a - lf.sample(x1, x2));
      (masked(masks, x1, x2) ? inside : kept).push_back(diff);
    }
  }
  json r;
  r["t"] = chr.t;
  r["lf_t"] = lf.t;
  r["abs_diff"] = stats(kept);
  r["skipped_points"] = skipped;
  r["hausdorff"] = hausdorff_distance(chr_set, lf_set);
  if (!masks.empty()) {
    r["masked_abs_diff"] = stats(inside);
    r["hausdorff_unmasked_region"] = hausdorff_distance(
        chr_set, lf_set, [&](double x1, double x2) { return masked(masks, x1, x2); });
  }
  return r;
}

Grid2DField crop_to_window(const Grid2DField& f, double half_width) {
  const double tol = 1e-9;
  auto range = [&](double lo, double h, std::size_t n, std::size_t& first, std::size_t& last) {
    first = n;
    last = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = lo + static_cast<double>(i) * h;
      if (std::fabs(x) <= half_width + tol) {
        first = std::min(first, i);
        last = i;
      }
    }
  };
  std::size_t i0, i1, j0, j1;
  range(f.axes.x1_min, f.axes.h1(), f.axes.n1, i0, i1);
  range(f.axes.x2_min, f.axes.h2(), f.axes.n2, j0, j1);
  if (i0 >= i1 || j0 >= j1) return f;
  GridAxes a{f.axes.x1(i0), f.axes.x1(i1), i1 - i0 + 1, f.axes.x2(j0), f.axes.x2(j1), j1 - j0 + 1};
  Grid2DField out(a, f.t, f.source);
  for (std::size_t j = j0; j <= j1; ++j) {
    for (std::size_t i = i0; i <= i1; ++i) {
      const std::size_t src = f.index(i, j);
      const std::size_t dst = out.index(i - i0, j - j0);
      out.values[dst] = f.values[src];
      out.converged[dst] = f.converged[src];
      out.certificate_ok[dst] = f.certificate_ok[src];
      out.trials_used[dst] = f.trials_used[src];
      out.wall_time[dst] = f.wall_time[src];
    }
  }
  return out;
}

}  // namespace hjchar::cli

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gmgd/vec.hpp"

namespace gmgd {

struct Jump {
  double time = 0.0;
  Vec value;
};

/// Cadlag path skeleton on [0, T]: a linear drift plus finitely many jumps
/// sorted by time.  The path value at t is drift*t + sum of jumps with
/// time <= t.
struct PathSkeleton {
  double horizon = 0.0;
  Vec drift;
  std::vector<Jump> jumps;  // sorted non-decreasing in time

  std::size_t dimension() const { return drift.size(); }

  /// Throws std::invalid_argument if times are unsorted, out of [0, T], or
  /// jump dimensions disagree with the drift.
  void validate() const;
};

/// Path value at a single time t in [0, T].
Vec evaluate_path(const PathSkeleton& path, double t);

/// Path values at a sorted list of times, one merge pass over the jumps.
std::vector<Vec> evaluate_path(const PathSkeleton& path,
                               std::span<const double> times);

/// CSV export: header "t,x_1,..,x_d"; one row per jump time (cumulative
/// value) plus rows for t=0 and t=T.  Values use 17 significant digits.
void write_path_csv(const PathSkeleton& path, std::ostream& os);

std::string path_to_json_string(const PathSkeleton& path, int indent = -1);
PathSkeleton path_from_json_string(const std::string& text);

}  // namespace gmgd

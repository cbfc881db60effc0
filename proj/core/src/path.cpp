#include "gmgd/path.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace gmgd {

void PathSkeleton::validate() const {
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("PathSkeleton: horizon must be positive");
  }
  double previous = 0.0;
  for (const auto& jump : jumps) {
    if (jump.value.size() != drift.size()) {
      throw std::invalid_argument("PathSkeleton: jump dimension mismatch");
    }
    if (jump.time < 0.0 || jump.time > horizon) {
      throw std::invalid_argument("PathSkeleton: jump time outside [0, T]");
    }
    if (jump.time < previous) {
      throw std::invalid_argument("PathSkeleton: jump times must be sorted");
    }
    previous = jump.time;
  }
}

Vec evaluate_path(const PathSkeleton& path, double t) {
  if (t < 0.0 || t > path.horizon) {
    throw std::invalid_argument("evaluate_path: time outside [0, T]");
  }
  Vec value = scaled(path.drift, t);
  for (const auto& jump : path.jumps) {
    if (jump.time > t) break;
    axpy(1.0, jump.value, value);
  }
  return value;
}

std::vector<Vec> evaluate_path(const PathSkeleton& path,
                               std::span<const double> times) {
  std::vector<Vec> out;
  out.reserve(times.size());
  Vec accumulated(path.dimension(), 0.0);
  std::size_t next_jump = 0;
  double previous_time = 0.0;
  for (double t : times) {
    if (t < previous_time) {
      throw std::invalid_argument("evaluate_path: times must be sorted");
    }
    if (t < 0.0 || t > path.horizon) {
      throw std::invalid_argument("evaluate_path: time outside [0, T]");
    }
    previous_time = t;
    while (next_jump < path.jumps.size() && path.jumps[next_jump].time <= t) {
      axpy(1.0, path.jumps[next_jump].value, accumulated);
      ++next_jump;
    }
    Vec value = scaled(path.drift, t);
    axpy(1.0, accumulated, value);
    out.push_back(std::move(value));
  }
  return out;
}

namespace {

void write_csv_row(std::ostream& os, double t, const Vec& value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", t);
  os << buffer;
  for (double x : value) {
    std::snprintf(buffer, sizeof buffer, "%.17g", x);
    os << ',' << buffer;
  }
  os << '\n';
}

}  // namespace

void write_path_csv(const PathSkeleton& path, std::ostream& os) {
  os << 't';
  for (std::size_t i = 1; i <= path.dimension(); ++i) {
    os << ",x_" << i;
  }
  os << '\n';
  write_csv_row(os, 0.0, Vec(path.dimension(), 0.0));
  // Walk jumps, accumulating the cumulative value at each jump time.
  Vec accumulated(path.dimension(), 0.0);
  for (const auto& jump : path.jumps) {
    axpy(1.0, jump.value, accumulated);
    Vec row = scaled(path.drift, jump.time);
    axpy(1.0, accumulated, row);
    write_csv_row(os, jump.time, row);
  }
  Vec last = scaled(path.drift, path.horizon);
  axpy(1.0, accumulated, last);
  write_csv_row(os, path.horizon, last);
}

std::string path_to_json_string(const PathSkeleton& path, int indent) {
  nlohmann::json j;
  j["horizon"] = path.horizon;
  j["drift"] = path.drift;
  auto& jumps = j["jumps"] = nlohmann::json::array();
  for (const auto& jump : path.jumps) {
    jumps.push_back({{"t", jump.time}, {"j", jump.value}});
  }
  return j.dump(indent);
}

PathSkeleton path_from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  PathSkeleton path;
  path.horizon = j.at("horizon").get<double>();
  path.drift = j.at("drift").get<Vec>();
  for (const auto& item : j.at("jumps")) {
    path.jumps.push_back(
        Jump{item.at("t").get<double>(), item.at("j").get<Vec>()});
  }
  path.validate();
  return path;
}

}  // namespace gmgd

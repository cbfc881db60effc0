#include "gmgd/validation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "gmgd/dickman.hpp"

namespace gmgd {

AnalyticMoments analytic_moments_study(std::size_t n, double epsilon,
                                       double t) {
  if (n == 0) {
    throw std::invalid_argument("analytic_moments_study: n must be >= 1");
  }
  if (!(epsilon >= 0.0) || !(t > 0.0)) {
    throw std::invalid_argument("analytic_moments_study: need eps >= 0, t > 0");
  }
  double sum_cos = 0.0, sum_sin = 0.0;
  double sum_cos2 = 0.0, sum_sin2 = 0.0, sum_cross = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    sum_cos += c;
    sum_sin += s;
    sum_cos2 += c * c;
    sum_sin2 += s * s;
    sum_cross += c * s;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  const double damp = std::exp(-epsilon);
  const double second = (epsilon + 1.0) * damp;
  AnalyticMoments m;
  m.mean1 = t * damp * inv_n * sum_cos;
  m.mean2 = t * damp * inv_n * sum_sin;
  m.var1 = t * second * inv_n * sum_cos2;
  m.var2 = t * second * inv_n * sum_sin2;
  m.cov = t * second * inv_n * sum_cross;
  return m;
}

AnalyticMoments analytic_large_jump_moments(const GmgdSpec& spec,
                                            double epsilon, double t) {
  spec.validate();
  if (spec.dimension != 2) {
    throw std::domain_error("analytic_large_jump_moments: bivariate specs only");
  }
  if (spec.p != 1.0) {
    throw std::domain_error(
        "analytic_large_jump_moments: closed forms implemented for p = 1");
  }
  if (!(epsilon >= 0.0) || !(t > 0.0)) {
    throw std::invalid_argument("analytic_large_jump_moments: need eps >= 0, t > 0");
  }
  AnalyticMoments m;
  for (std::size_t i = 0; i < spec.spectral.atom_count(); ++i) {
    const double w = spec.spectral.weight(i);
    const Vec& s = spec.spectral.atom(i);
    double first = 0.0;   // integral of e^-rv over (eps, inf), mixed over Q_s
    double second = 0.0;  // integral of r e^-rv over (eps, inf)
    for (const auto& atom : spec.thorin[i]) {
      const double v = atom.location;
      const double damp = std::exp(-epsilon * v);
      first += atom.weight * damp / v;
      second += atom.weight * (1.0 + epsilon * v) * damp / (v * v);
    }
    m.mean1 += w * s[0] * first;
    m.mean2 += w * s[1] * first;
    m.var1 += w * s[0] * s[0] * second;
    m.var2 += w * s[1] * s[1] * second;
    m.cov += w * s[0] * s[1] * second;
  }
  m.mean1 *= t;
  m.mean2 *= t;
  m.var1 *= t;
  m.var2 *= t;
  m.cov *= t;
  return m;
}

namespace {

constexpr std::size_t kBlockSize = 1024;

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Raw power sums for one time point of one estimator.
struct TimeSums {
  double s1 = 0.0;
  double s2 = 0.0;
  double s11 = 0.0;
  double s22 = 0.0;
  double s12 = 0.0;

  void add(double x1, double x2) {
    s1 += x1;
    s2 += x2;
    s11 += x1 * x1;
    s22 += x2 * x2;
    s12 += x1 * x2;
  }
};

struct TimeKahan {
  KahanSum s1, s2, s11, s22, s12;

  void add(const TimeSums& block) {
    s1.add(block.s1);
    s2.add(block.s2);
    s11.add(block.s11);
    s22.add(block.s22);
    s12.add(block.s12);
  }
};

void check_times(std::span<const double> times, double horizon) {
  if (times.empty()) {
    throw std::invalid_argument("moment_study: time grid must be nonempty");
  }
  double previous = 0.0;
  for (double t : times) {
    if (!(t > previous) || t > horizon) {
      throw std::invalid_argument(
          "moment_study: times must be strictly increasing in (0, horizon]");
    }
    previous = t;
  }
}

// Accumulates the per-replication path values at the grid times into block
// sums.  Jumps are bucketed by the first grid time at or after them, then
// prefix-summed, which avoids sorting the (large) Dickman jump list.
struct StudyEngine {
  const GmgdSpec& spec;
  const SimulationConfig& cfg;
  std::span<const double> times;
  bool with_dickman;
  bool also_large_only;
  const LargeJumpLaw law;

  StudyEngine(const GmgdSpec& s, const SimulationConfig& c,
              std::span<const double> ts, bool dickman, bool large_only)
      : spec(s),
        cfg(c),
        times(ts),
        with_dickman(dickman),
        also_large_only(large_only),
        law(s, c.epsilon) {}

  void run_replication(std::uint64_t replication, std::vector<TimeSums>& main,
                       std::vector<TimeSums>* large_only,
                       std::vector<double>& bucket1,
                       std::vector<double>& bucket2,
                       std::vector<double>& dickman1,
                       std::vector<double>& dickman2) const {
    const std::size_t count = times.size();
    std::fill(bucket1.begin(), bucket1.end(), 0.0);
    std::fill(bucket2.begin(), bucket2.end(), 0.0);

    const auto bucket_of = [&](double time) {
      return static_cast<std::size_t>(
          std::lower_bound(times.begin(), times.end(), time) - times.begin());
    };

    {
      Rng rng = Rng::substream(
          cfg.seed, static_cast<std::uint64_t>(StreamTag::kLargeJumps),
          replication);
      for_each_large_jump(law, cfg.horizon, cfg.beta, rng,
                          [&](double time, double scale, std::size_t atom) {
                            const std::size_t b = bucket_of(time);
                            if (b < count) {
                              const Vec& dir = spec.spectral.atom(atom);
                              bucket1[b] += scale * dir[0];
                              bucket2[b] += scale * dir[1];
                            }
                          });
    }

    if (with_dickman) {
      std::fill(dickman1.begin(), dickman1.end(), 0.0);
      std::fill(dickman2.begin(), dickman2.end(), 0.0);
      Rng rng = Rng::substream(
          cfg.seed, static_cast<std::uint64_t>(StreamTag::kDickman),
          replication);
      const DickmanSpec dickman_spec(spec.spectral, cfg.epsilon);
      for_each_dickman_jump(dickman_spec, cfg.horizon,
                            cfg.shot_noise_truncation, rng,
                            [&](double time, double magnitude,
                                std::size_t atom) {
                              const std::size_t b = bucket_of(time);
                              if (b < count) {
                                const Vec& dir = spec.spectral.atom(atom);
                                dickman1[b] += magnitude * dir[0];
                                dickman2[b] += magnitude * dir[1];
                              }
                            });
    }

    double large1 = 0.0, large2 = 0.0;
    double small1 = 0.0, small2 = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      large1 += bucket1[k];
      large2 += bucket2[k];
      if (also_large_only) {
        (*large_only)[k].add(large1, large2);
      }
      if (with_dickman) {
        small1 += dickman1[k];
        small2 += dickman2[k];
        const double t = times[k];
        main[k].add(large1 + small1 + spec.gamma[0] * t,
                    large2 + small2 + spec.gamma[1] * t);
      } else {
        main[k].add(large1, large2);
      }
    }
  }
};

struct StudySums {
  std::vector<TimeSums> main;
  std::vector<TimeSums> large_only;
};

StudySums run_study(const GmgdSpec& spec, const SimulationConfig& cfg,
                    std::size_t replications, std::span<const double> times,
                    bool with_dickman, bool also_large_only, unsigned threads) {
  spec.validate();
  cfg.validate();
  check_times(times, cfg.horizon);
  if (spec.dimension != 2) {
    throw std::invalid_argument("moment_study: bivariate specs only");
  }
  if (replications < 2) {
    throw std::invalid_argument("moment_study: need at least 2 replications");
  }

  const StudyEngine engine(spec, cfg, times, with_dickman, also_large_only);
  const std::size_t count = times.size();
  const std::size_t blocks = (replications + kBlockSize - 1) / kBlockSize;

  std::vector<std::vector<TimeSums>> block_main(
      blocks, std::vector<TimeSums>(count));
  std::vector<std::vector<TimeSums>> block_large(
      also_large_only ? blocks : 0, std::vector<TimeSums>(count));

  std::atomic<std::size_t> next_block{0};
  const auto worker = [&]() {
    std::vector<double> bucket1(count), bucket2(count);
    std::vector<double> dickman1(with_dickman ? count : 0),
        dickman2(with_dickman ? count : 0);
    for (;;) {
      const std::size_t block = next_block.fetch_add(1);
      if (block >= blocks) {
        return;
      }
      const std::uint64_t begin = block * kBlockSize;
      const std::uint64_t end = std::min<std::uint64_t>(
          begin + kBlockSize, replications);
      auto* large = also_large_only ? &block_large[block] : nullptr;
      for (std::uint64_t r = begin; r < end; ++r) {
        engine.run_replication(r, block_main[block], large, bucket1, bucket2,
                               dickman1, dickman2);
      }
    }
  };

  const unsigned worker_count =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(blocks)));
  if (worker_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (unsigned i = 0; i < worker_count; ++i) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  // Sequential compensated reduction in block order keeps the result
  // independent of the thread count.
  StudySums out;
  out.main.resize(count);
  if (also_large_only) {
    out.large_only.resize(count);
  }
  std::vector<TimeKahan> main_acc(count);
  std::vector<TimeKahan> large_acc(also_large_only ? count : 0);
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t k = 0; k < count; ++k) {
      main_acc[k].add(block_main[b][k]);
      if (also_large_only) {
        large_acc[k].add(block_large[b][k]);
      }
    }
  }
  for (std::size_t k = 0; k < count; ++k) {
    out.main[k] = TimeSums{main_acc[k].s1.sum, main_acc[k].s2.sum,
                           main_acc[k].s11.sum, main_acc[k].s22.sum,
                           main_acc[k].s12.sum};
    if (also_large_only) {
      out.large_only[k] = TimeSums{large_acc[k].s1.sum, large_acc[k].s2.sum,
                                   large_acc[k].s11.sum, large_acc[k].s22.sum,
                                   large_acc[k].s12.sum};
    }
  }
  return out;
}

MomentReport make_report(const GmgdSpec& spec, double analytic_epsilon,
                         std::span<const double> times,
                         const std::vector<TimeSums>& sums,
                         std::size_t replications) {
  MomentReport report;
  report.replications = replications;
  const double n = static_cast<double>(replications);
  for (std::size_t k = 0; k < times.size(); ++k) {
    MomentRow row;
    row.time = times[k];
    row.analytic = analytic_large_jump_moments(spec, analytic_epsilon, row.time);
    const TimeSums& s = sums[k];
    row.mean1 = s.s1 / n;
    row.mean2 = s.s2 / n;
    // Unbiased sample second moments.
    row.var1 = (s.s11 - n * row.mean1 * row.mean1) / (n - 1.0);
    row.var2 = (s.s22 - n * row.mean2 * row.mean2) / (n - 1.0);
    row.cov = (s.s12 - n * row.mean1 * row.mean2) / (n - 1.0);
    const double t = row.time;
    row.err_mean1 = std::abs(row.analytic.mean1 - row.mean1) / t;
    row.err_mean2 = std::abs(row.analytic.mean2 - row.mean2) / t;
    row.err_var1 = std::abs(row.analytic.var1 - row.var1) / t;
    row.err_var2 = std::abs(row.analytic.var2 - row.var2) / t;
    row.err_cov = std::abs(row.analytic.cov - row.cov) / t;
    row.total_error = std::sqrt(
        row.err_mean1 * row.err_mean1 + row.err_mean2 * row.err_mean2 +
        row.err_var1 * row.err_var1 + row.err_var2 * row.err_var2 +
        row.err_cov * row.err_cov);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace

MomentReport moment_study(const GmgdSpec& spec, const SimulationConfig& cfg,
                          std::size_t replications,
                          std::span<const double> times, StudyTarget target,
                          unsigned threads) {
  const bool with_dickman = target == StudyTarget::kFullProcess;
  StudySums sums = run_study(spec, cfg, replications, times, with_dickman,
                             /*also_large_only=*/false, threads);
  const double analytic_epsilon =
      target == StudyTarget::kLargeJumpsOnly ? cfg.epsilon : 0.0;
  return make_report(spec, analytic_epsilon, times, sums.main, replications);
}

ComparisonStudy moment_study_compare(const GmgdSpec& spec,
                                     const SimulationConfig& cfg,
                                     std::size_t replications,
                                     std::span<const double> times,
                                     unsigned threads) {
  StudySums sums = run_study(spec, cfg, replications, times,
                             /*with_dickman=*/true,
                             /*also_large_only=*/true, threads);
  ComparisonStudy out;
  out.with_dickman = make_report(spec, 0.0, times, sums.main, replications);
  out.drop_small_jumps =
      make_report(spec, 0.0, times, sums.large_only, replications);
  return out;
}

std::vector<double> default_time_grid(double horizon, std::size_t count) {
  if (!(horizon > 0.0) || count == 0) {
    throw std::invalid_argument("default_time_grid: need horizon > 0, count >= 1");
  }
  std::vector<double> times(count);
  for (std::size_t k = 0; k < count; ++k) {
    times[k] = horizon * static_cast<double>(k + 1) / static_cast<double>(count);
  }
  times.back() = horizon;
  return times;
}

const MomentRow& MomentReport::at_time(double t) const {
  for (const auto& row : rows) {
    if (std::abs(row.time - t) <= 1e-12) {
      return row;
    }
  }
  throw std::invalid_argument("MomentReport::at_time: no row at requested time");
}

std::string MomentReport::to_json_string(int indent) const {
  nlohmann::json j;
  j["replications"] = replications;
  auto& rows_json = j["rows"] = nlohmann::json::array();
  for (const auto& row : rows) {
    rows_json.push_back({
        {"t", row.time},
        {"analytic",
         {{"mean", {row.analytic.mean1, row.analytic.mean2}},
          {"var", {row.analytic.var1, row.analytic.var2}},
          {"cov", row.analytic.cov}}},
        {"empirical",
         {{"mean", {row.mean1, row.mean2}},
          {"var", {row.var1, row.var2}},
          {"cov", row.cov}}},
        {"err_mean", {row.err_mean1, row.err_mean2}},
        {"err_var", {row.err_var1, row.err_var2}},
        {"err_cov", row.err_cov},
        {"total_error", row.total_error},
    });
  }
  return j.dump(indent);
}

namespace {

void append_csv_value(std::string& line, double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  line += ',';
  line += buffer;
}

}  // namespace

void MomentReport::write_csv(std::ostream& os) const {
  os << "t,analytic_mean1,analytic_mean2,analytic_var1,analytic_var2,"
        "analytic_cov,mean1,mean2,var1,var2,cov,err_mean1,err_mean2,"
        "err_var1,err_var2,err_cov,total_error\n";
  for (const auto& row : rows) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", row.time);
    std::string line = buffer;
    for (double v :
         {row.analytic.mean1, row.analytic.mean2, row.analytic.var1,
          row.analytic.var2, row.analytic.cov, row.mean1, row.mean2, row.var1,
          row.var2, row.cov, row.err_mean1, row.err_mean2, row.err_var1,
          row.err_var2, row.err_cov, row.total_error}) {
      append_csv_value(line, v);
    }
    os << line << '\n';
  }
}

namespace {

// Adaptive Simpson on [lo, hi] (smooth integrands only; used for the
// convergence checker when p_test differs from the spec's p).
template <class F>
double adaptive_simpson_step(const F& f, double lo, double hi, double f_lo,
                             double f_mid, double f_hi, double whole,
                             double tolerance, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lm = 0.5 * (lo + mid);
  const double mh = 0.5 * (mid + hi);
  const double f_lm = f(lm);
  const double f_mh = f(mh);
  const double left = (mid - lo) / 6.0 * (f_lo + 4.0 * f_lm + f_mid);
  const double right = (hi - mid) / 6.0 * (f_mid + 4.0 * f_mh + f_hi);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tolerance) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_step(f, lo, mid, f_lo, f_lm, f_mid, left,
                               0.5 * tolerance, depth - 1) +
         adaptive_simpson_step(f, mid, hi, f_mid, f_mh, f_hi, right,
                               0.5 * tolerance, depth - 1);
}

template <class F>
double adaptive_simpson(const F& f, double lo, double hi, double tolerance) {
  const double mid = 0.5 * (lo + hi);
  const double f_lo = f(lo);
  const double f_mid = f(mid);
  const double f_hi = f(hi);
  const double whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
  return adaptive_simpson_step(f, lo, hi, f_lo, f_mid, f_hi, whole, tolerance,
                               48);
}

// Normalized sector integral m(eps, v) =
//   (p_test / eps^p_test) * integral_0^eps r^(p_test-1) e^-(r^p v) dr,
// which lies in (0, 1] and tends to 1 as eps -> 0.
double normalized_small_jump_mass(double eps, double v, double spec_p,
                                  double p_test) {
  if (p_test == spec_p) {
    const double x = std::pow(eps, spec_p) * v;
    // (1 - e^-x)/x, evaluated stably near 0.
    return x < 1e-8 ? 1.0 - 0.5 * x : -std::expm1(-x) / x;
  }
  const double power = spec_p / p_test;
  const double scale = std::pow(eps, spec_p) * v;
  return adaptive_simpson(
      [&](double u) { return std::exp(-scale * std::pow(u, power)); }, 0.0,
      1.0, 1e-13);
}

}  // namespace

std::vector<ConvergencePoint> convergence_check(
    const GmgdSpec& spec, std::span<const std::size_t> sector, double p_test,
    std::span<const double> epsilons) {
  spec.validate();
  if (!(p_test > 0.0) || !std::isfinite(p_test)) {
    throw std::invalid_argument("convergence_check: p_test must be positive");
  }
  double previous = std::numeric_limits<double>::infinity();
  for (double eps : epsilons) {
    if (!(eps > 0.0) || !(eps < previous)) {
      throw std::invalid_argument(
          "convergence_check: epsilons must be positive and strictly decreasing");
    }
    previous = eps;
  }
  const double sector_weight = subset_mass(spec.spectral, sector);
  std::vector<ConvergencePoint> out;
  out.reserve(epsilons.size());
  for (double eps : epsilons) {
    if (sector_weight == 0.0) {
      out.push_back(ConvergencePoint{eps, 1.0});
      continue;
    }
    double ratio = 0.0;
    for (std::size_t idx : sector) {
      double atom_ratio = 0.0;
      for (const auto& thorin : spec.thorin[idx]) {
        atom_ratio += thorin.weight * normalized_small_jump_mass(
                                          eps, thorin.location, spec.p, p_test);
      }
      ratio += spec.spectral.weight(idx) * atom_ratio;
    }
    out.push_back(ConvergencePoint{eps, ratio / sector_weight});
  }
  return out;
}

void write_convergence_csv(std::span<const ConvergencePoint> points,
                           std::ostream& os) {
  os << "epsilon,ratio\n";
  for (const auto& point : points) {
    char buffer[80];
    std::snprintf(buffer, sizeof buffer, "%.17g,%.17g\n", point.epsilon,
                  point.ratio);
    os << buffer;
  }
}

}  // namespace gmgd

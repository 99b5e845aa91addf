// Trading-session layout, tick records and 1-second count series.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace coxsr {

/// Layout of a multi-day tick session. Defaults describe a 6.5 hour day with
/// the first 5 minutes skipped and 192 two-minute bins; the trailing 60 s
/// after the last bin are discarded.
struct SessionSpec {
  double session_length = 23400.0;  ///< seconds per day
  double warmup_skip = 300.0;       ///< seconds dropped at the open
  double bin_width = 120.0;         ///< seconds
  int bins_per_day = 192;
  int days = 21;
  double tick_resolution = 1.0;  ///< seconds per count interval
  /// Restart the noise from its stationary law at each day boundary
  /// instead of letting it run continuously across days.
  bool restart_noise_each_day = false;

  void validate() const;

  /// Number of tick_resolution intervals per day.
  Eigen::Index intervals_per_day() const;
  Eigen::Index total_intervals() const { return intervals_per_day() * days; }
  /// Mid-time of bin b, seconds from the open.
  double bin_mid_time(int b) const { return warmup_skip + (b + 0.5) * bin_width; }

  bool operator==(const SessionSpec&) const = default;
};

struct TickRecord {
  int day_index = 0;
  double t = 0.0;  ///< seconds since session open
  std::string symbol;

  bool operator==(const TickRecord&) const = default;
};

/// Per-interval counts concatenated across days.
struct CountSeries {
  Eigen::ArrayXd counts;  ///< non-negative integer values
  std::vector<Eigen::Index> day_starts;
  double tick_resolution = 1.0;
};

/// Counts ticks per tick_resolution interval over the full session.
/// Ticks outside [0, session_length) or with day_index >= days throw.
CountSeries count_series_from_ticks(const std::vector<TickRecord>& ticks,
                                    const SessionSpec& session);

}  // namespace coxsr

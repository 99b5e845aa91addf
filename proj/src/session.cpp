#include "coxsr/session.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coxsr/model.hpp"

namespace coxsr {

void SessionSpec::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw InvalidArgument("session: " + what);
  };
  require(session_length > 0.0, "session_length must be > 0");
  require(warmup_skip >= 0.0, "warmup_skip must be >= 0");
  require(bin_width > 0.0, "bin_width must be > 0");
  require(bins_per_day >= 1, "bins_per_day must be >= 1");
  require(days >= 1, "days must be >= 1");
  require(tick_resolution > 0.0, "tick_resolution must be > 0");
  require(warmup_skip + bins_per_day * bin_width <= session_length,
          "warmup_skip + bins_per_day * bin_width exceeds session_length");
  const double per_day = session_length / tick_resolution;
  require(std::abs(per_day - std::round(per_day)) < 1e-9,
          "session_length must be a multiple of tick_resolution");
}

Eigen::Index SessionSpec::intervals_per_day() const {
  return static_cast<Eigen::Index>(std::llround(session_length / tick_resolution));
}

CountSeries count_series_from_ticks(const std::vector<TickRecord>& ticks,
                                    const SessionSpec& session) {
  session.validate();
  const Eigen::Index per_day = session.intervals_per_day();
  CountSeries out;
  out.tick_resolution = session.tick_resolution;
  out.counts = Eigen::ArrayXd::Zero(per_day * session.days);
  for (int d = 0; d < session.days; ++d) out.day_starts.push_back(d * per_day);
  for (const auto& tick : ticks) {
    if (tick.day_index < 0 || tick.day_index >= session.days || !(tick.t >= 0.0) ||
        tick.t >= session.session_length) {
      throw InvalidArgument("tick outside session: day " + std::to_string(tick.day_index) +
                            ", t " + std::to_string(tick.t));
    }
    auto k = static_cast<Eigen::Index>(std::floor(tick.t / session.tick_resolution));
    k = std::min(k, per_day - 1);
    out.counts(tick.day_index * per_day + k) += 1.0;
  }
  return out;
}

}  // namespace coxsr

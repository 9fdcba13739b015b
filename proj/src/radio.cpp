#include "pwe/radio.hpp"

#include <cmath>

namespace pwe {

namespace {
constexpr double kSpeedOfLight = 299792458.0;  // m/s
}

double antenna_weight(const AntennaPattern& pattern, Bearing direction) {
  const double delta = bearing_offset(direction, pattern.boresight);
  const double half = pattern.lobe_width_deg / 2.0;
  if (std::abs(delta) > half) return 0.0;
  return std::cos(M_PI * delta / pattern.lobe_width_deg);
}

std::vector<Ray> launch_rays(const Device& tx, std::size_t n) {
  const double width = tx.pattern.lobe_width_deg;
  const double p_total = dbm_to_mw(tx.tx_power_dbm);

  std::vector<double> weights(n);
  std::vector<Bearing> dirs(n);
  double weight_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double offset =
        -width / 2.0 + width * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    dirs[i] = Bearing::from_degrees(tx.pattern.boresight.degrees() + offset);
    weights[i] = antenna_weight(tx.pattern, dirs[i]);
    weight_sum += weights[i];
  }

  std::vector<Ray> rays(n);
  for (std::size_t i = 0; i < n; ++i) {
    rays[i] = Ray{tx.position, dirs[i], p_total * weights[i] / weight_sum, 0, 0.0};
  }
  return rays;
}

double path_gain(const PowerModel& model, double total_path_length, int bounces) {
  const double bounce_gain = std::pow(1.0 - model.bounce_loss, bounces);
  if (model.mode == PropagationMode::BounceOnly) return bounce_gain;
  if (total_path_length <= 0.0) throw ZeroDistance{};
  const double lambda = kSpeedOfLight / model.frequency_hz;
  const double spread = lambda / (4.0 * M_PI * total_path_length);
  return spread * spread * bounce_gain;
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double mw_to_dbm(double mw) {
  if (mw <= 0.0) throw NonPositivePower{};
  return 10.0 * std::log10(mw);
}

}  // namespace pwe

#pragma once

#include "pwe/geometry.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pwe {

/// Single-lobe antenna: raised-cosine amplitude across the full lobe
/// width, zero outside it.
struct AntennaPattern {
  Bearing boresight;
  double lobe_width_deg = 40.0;  // full width, 0 < width <= 360
};

enum class Role { Tx, Rx };

struct Device {
  Point2 position{0.0, 0.0};
  AntennaPattern pattern;
  Role role = Role::Tx;
  double tx_power_dbm = 0.0;    // Tx only
  double capture_radius = 0.5;  // Rx only, meters
};

enum class PropagationMode { BounceOnly, Friis };

struct PowerModel {
  PropagationMode mode = PropagationMode::BounceOnly;
  double frequency_hz = 2.4e9;
  double bounce_loss = 0.01;  // fraction lost per metasurface interaction
};

struct ZeroDistance : std::runtime_error {
  ZeroDistance() : std::runtime_error("Friis gain undefined at zero distance") {}
};

struct NonPositivePower : std::runtime_error {
  NonPositivePower() : std::runtime_error("dBm undefined for power <= 0 mW") {}
};

/// Gain in [0, 1] for a wave travelling in `direction`:
/// cos(pi * delta / width) for |delta| <= width/2 off boresight, else 0.
double antenna_weight(const AntennaPattern& pattern, Bearing direction);

struct Ray {
  Point2 origin{0.0, 0.0};
  Bearing direction;
  double power_mw = 0.0;
  int bounces = 0;
  double path_length = 0.0;
};

/// n rays at midpoints of n equal slices of the lobe. Powers follow the
/// antenna weight and sum to the transmit power exactly.
std::vector<Ray> launch_rays(const Device& tx, std::size_t n);

/// Multiplicative gain over a path. BounceOnly ignores distance; Friis
/// adds (lambda / 4 pi d)^2 free-space spreading.
double path_gain(const PowerModel& model, double total_path_length, int bounces);

double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);  // throws NonPositivePower for mw <= 0

}  // namespace pwe

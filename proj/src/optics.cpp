// Copyright 2026 The satqr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "satqr/optics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "satqr/errors.hpp"

namespace satqr {

namespace {

constexpr double kPlanck = 6.62607015e-34;
constexpr double kSpeedOfLight = 299792458.0;
constexpr double kQuadratureAbsTol = 1e-9;

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

bool is_memory(NodeRole r) {
  return r == NodeRole::AbsorptiveMemory || r == NodeRole::EmissiveMemory;
}

double endpoint_device_factor(const StationNode& n, const OpticalParams& o) {
  if (n.on_ground) return o.detector_efficiency;
  return is_memory(n.role) ? o.memory_efficiency : 1.0;
}

}  // namespace

void OpticalParams::validate() const {
  if (!(wavelength_m > 0) || !(divergence_rad > 0) || !(receiver_radius_m > 0))
    throw InvalidArgument("wavelength, divergence and receiver radius must be > 0");
  if (!(pointing_error_rad >= 0)) throw InvalidArgument("pointing error must be >= 0");
  if (!in_unit(zenith_transmittance) || !in_unit(detector_efficiency) ||
      !in_unit(memory_efficiency) || !in_unit(dark_count_prob))
    throw InvalidArgument("efficiencies and dark count probability must lie in [0,1]");
}

void BackgroundParams::validate() const {
  if (!(sky_brightness > 0) || !(field_of_view_sr > 0) || !(filter_bandwidth_nm > 0) ||
      !(detection_window_s > 0))
    throw InvalidArgument("background parameters must be > 0");
  if (!(weather_factor >= 0) || weather_factor > 1)
    throw InvalidArgument("weather factor must lie in [0,1]");
}

double beam_waist(double wavelength_m, double divergence_rad) {
  if (!(wavelength_m > 0) || !(divergence_rad > 0))
    throw InvalidArgument("beam_waist needs positive wavelength and divergence");
  return wavelength_m / (divergence_rad * std::numbers::pi);
}

double beam_width(double waist_m, double divergence_rad, double z_m) {
  if (!(z_m >= 0)) throw InvalidArgument("propagation distance must be >= 0");
  const double growth = divergence_rad / waist_m * z_m;
  return waist_m * std::sqrt(1.0 + growth * growth);
}

double diffraction_efficiency(double z_m, const OpticalParams& params) {
  if (!(z_m > 0)) throw InvalidArgument("diffraction_efficiency needs z > 0");
  const double w0 = beam_waist(params.wavelength_m, params.divergence_rad);
  const double w = beam_width(w0, params.divergence_rad, z_m);
  // The beam profile exp(-2r^2/w^2) is a 2-D Gaussian with per-axis variance
  // w^2/4. Convolving with the jitter kernel (per-axis std z*sigma_p) adds
  // the variances, so the broadened profile has 1/e^2 radius w_eff.
  const double jitter = z_m * params.pointing_error_rad;
  const double w_eff2 = w * w + 4.0 * jitter * jitter;

  auto radial = [w_eff2](double r) { return 4.0 * r / w_eff2 * std::exp(-2.0 * r * r / w_eff2); };
  double err = 0.0;
  const double eta = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      radial, 0.0, params.receiver_radius_m, 20, 1e-13, &err);
  if (!(err <= kQuadratureAbsTol))
    throw QuadratureError("aperture integral did not converge (error estimate " +
                          std::to_string(err) + ")");
  return std::clamp(eta, 0.0, 1.0);
}

double atmospheric_efficiency(double elevation_rad, double zenith_transmittance) {
  if (!(elevation_rad > 0)) return 0.0;
  return std::pow(zenith_transmittance, 1.0 / std::sin(elevation_rad));
}

BackgroundRate background_rate(const BackgroundParams& bg, const OpticalParams& optics) {
  const double area = std::numbers::pi * optics.receiver_radius_m * optics.receiver_radius_m;
  const double bandwidth_um = bg.filter_bandwidth_nm * 1e-3;
  const double photon_energy = kPlanck * kSpeedOfLight / optics.wavelength_m;
  BackgroundRate out;
  out.photons_per_s = bg.weather_factor * bg.sky_brightness * bg.field_of_view_sr * area *
                      bandwidth_um / photon_energy;
  out.prob_per_window = -std::expm1(-out.photons_per_s * bg.detection_window_s);
  return out;
}

double noise_click_prob(const OpticalParams& optics, const BackgroundParams& bg) {
  const double p_bg = background_rate(bg, optics).prob_per_window;
  return 1.0 - (1.0 - optics.dark_count_prob) * (1.0 - p_bg);
}

EffectiveClick effective_click(double eta, double noise_prob) {
  if (!in_unit(eta) || !in_unit(noise_prob))
    throw InvalidArgument("effective_click needs eta and noise probability in [0,1]");
  const double quiet = (1.0 - noise_prob) * (1.0 - noise_prob);
  EffectiveClick out;
  out.eta_eff = noise_prob == 0.0 ? eta : 1.0 - (1.0 - eta) * quiet;
  if (!(out.eta_eff > 0))
    throw InvalidArgument("no click is possible: alpha undefined for eta = noise = 0");
  out.alpha = noise_prob == 0.0 ? 1.0 : std::min(1.0, eta * (1.0 - noise_prob) / out.eta_eff);
  return out;
}

LinkBudget link_budget(LinkClass link_class, std::span<const StationNode> path,
                       const OpticalParams& optics, const BackgroundParams& bg,
                       const GeometryConfig& geo) {
  auto dif = [&](const StationNode& x, const StationNode& y) {
    return diffraction_efficiency(pair_distance(x, y) * 1e3, optics);
  };
  LinkBudget out;
  out.link_class = link_class;

  switch (link_class) {
    case LinkClass::GroundSatellite: {
      if (path.size() != 2 || path[0].on_ground == path[1].on_ground)
        throw InvalidArgument("ground-satellite link needs one ground and one satellite node");
      const StationNode& ground = path[0].on_ground ? path[0] : path[1];
      const StationNode& sat = path[0].on_ground ? path[1] : path[0];
      out.diffraction = dif(ground, sat);
      out.atmosphere = atmospheric_efficiency(elevation_between(ground, sat, geo),
                                              optics.zenith_transmittance);
      out.device = endpoint_device_factor(ground, optics) * endpoint_device_factor(sat, optics);
      out.noise_prob = noise_click_prob(optics, bg);
      break;
    }
    case LinkClass::SatelliteSatellite: {
      if (path.size() != 2 || path[0].on_ground || path[1].on_ground)
        throw InvalidArgument("satellite-satellite link needs two satellite nodes");
      out.diffraction = dif(path[0], path[1]);
      out.atmosphere = 1.0;
      out.device = endpoint_device_factor(path[0], optics) * endpoint_device_factor(path[1], optics);
      break;
    }
    case LinkClass::GroundSatelliteSatellite: {
      if (path.size() != 3 || !path[0].on_ground || path[1].on_ground || path[2].on_ground)
        throw InvalidArgument("ground-satellite-satellite link needs ground, source, satellite");
      const StationNode& ground = path[0];
      const StationNode& source = path[1];
      const StationNode& far = path[2];
      out.diffraction = dif(source, ground) * dif(source, far);
      out.atmosphere = atmospheric_efficiency(elevation_between(ground, source, geo),
                                              optics.zenith_transmittance);
      out.device = endpoint_device_factor(ground, optics) * endpoint_device_factor(far, optics);
      out.noise_prob = noise_click_prob(optics, bg);
      break;
    }
  }
  out.total = out.diffraction * out.atmosphere * out.device;
  return out;
}

}  // namespace satqr

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

#pragma once

// Free-space link budget: Gaussian-beam diffraction with transmitter
// pointing jitter, slant atmospheric transmission, device efficiencies and
// the per-window noise-click probability at ground detectors.
//
// Optical quantities are SI (m, rad, s). Link lengths coming from the
// geometry module are km and are converted at the boundary.

#include <span>

#include "satqr/geometry.hpp"

namespace satqr {

struct OpticalParams {
  double wavelength_m = 780e-9;
  double divergence_rad = 3e-6;
  double pointing_error_rad = 1e-6;
  double receiver_radius_m = 0.5;
  double zenith_transmittance = 0.8;
  double detector_efficiency = 0.7;
  double memory_efficiency = 0.8;
  double dark_count_prob = 1e-6;

  void validate() const;
};

struct BackgroundParams {
  double sky_brightness = 150.0;    // W m^-2 sr^-1 um^-1
  double field_of_view_sr = 3.14e-10;
  double filter_bandwidth_nm = 0.02;
  double weather_factor = 1e-7;     // 1e-2 day, 1e-5 full moon, 1e-7 moonless
  double detection_window_s = 1e-6;

  void validate() const;
};

struct BackgroundRate {
  double photons_per_s = 0.0;
  double prob_per_window = 0.0;
};

struct EffectiveClick {
  double eta_eff = 0.0;
  double alpha = 1.0;  // probability that a click is a real photon
};

enum class LinkClass { GroundSatellite, SatelliteSatellite, GroundSatelliteSatellite };

/// Efficiency decomposition of one link. `total` is always the product of
/// `diffraction`, `atmosphere` and `device`.
struct LinkBudget {
  LinkClass link_class = LinkClass::GroundSatellite;
  double diffraction = 1.0;
  double atmosphere = 1.0;
  double device = 1.0;
  double total = 1.0;
  double noise_prob = 0.0;  // per detection window at the ground detector, 0 if none
};

double beam_waist(double wavelength_m, double divergence_rad);
double beam_width(double waist_m, double divergence_rad, double z_m);

/// Fraction of transmitted power collected by a receiver aperture at
/// distance `z_m`, averaged over a 2-D Gaussian pointing jitter of standard
/// deviation `pointing_error_rad` per axis. Deterministic; evaluated as a
/// radial integral over the aperture of the jitter-broadened profile.
double diffraction_efficiency(double z_m, const OpticalParams& params);

/// Zenith transmittance raised to the air-mass factor 1/sin(elevation).
/// Zero at or below the horizon.
double atmospheric_efficiency(double elevation_rad, double zenith_transmittance);

BackgroundRate background_rate(const BackgroundParams& bg, const OpticalParams& optics);

/// Noise probability per detection window: dark counts combined with
/// background light.
double noise_click_prob(const OpticalParams& optics, const BackgroundParams& bg);

/// Click probability including noise, and the fraction of clicks that are
/// genuine. Throws InvalidArgument when no click can occur (eta = noise = 0).
EffectiveClick effective_click(double eta, double noise_prob);

/// Budget of a link traversing `path`. The first and last nodes are the
/// endpoints; a three-node path is the ground-satellite-satellite class with
/// the source on the middle node, where both arms are composed as
/// independent single-photon channels.
LinkBudget link_budget(LinkClass link_class, std::span<const StationNode> path,
                       const OpticalParams& optics, const BackgroundParams& bg,
                       const GeometryConfig& geo = {});

}  // namespace satqr

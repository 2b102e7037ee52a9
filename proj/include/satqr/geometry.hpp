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

// Spherical-Earth geometry for a coplanar constellation: ground stations A
// and B on a great circle, three satellites on one circular orbit in the
// same plane. Lengths are in km unless a name says otherwise.

#include <array>
#include <cmath>
#include <string>

namespace satqr {

struct GeometryConfig {
  double earth_radius_km = 6371.0;
  double earth_mass_kg = 5.972e24;
  double grav_const = 6.67408e-11;  // m^3 kg^-1 s^-2
  double speed_of_light_m_s = 299792458.0;

  void validate() const;
  double speed_of_light_km_s() const { return speed_of_light_m_s * 1e-3; }
};

/// Where the three satellites sit relative to the ground track from A to B.
/// Offsets are fractions of the ground distance measured from A, evaluated
/// at orbit phase zero. Negative offsets put a satellite behind A.
struct GroundTrackLayout {
  double ground_distance_km = 4400.0;
  double orbital_height_km = 400.0;
  double sat_a_offset = 0.0;
  double sat_c_offset = 0.5;
  double sat_b_offset = 1.0;
  double orbit_phase_s = 0.0;

  void validate() const;
};

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
};

enum class NodeRole { Detector, Source, AbsorptiveMemory, EmissiveMemory };

/// A ground station or satellite. `angle_rad` is the polar angle in the
/// orbital plane, measured from the A-B midpoint direction toward B.
struct StationNode {
  std::string name;
  Vec3 position;
  double angle_rad = 0.0;
  double radius_km = 0.0;
  bool on_ground = true;
  NodeRole role = NodeRole::Detector;
};

/// Positions of the five stations in an Earth-centred frame (km).
struct Constellation {
  StationNode a, b, sat_a, sat_c, sat_b;
};

/// Line-of-sight length between a ground point and a satellite whose
/// sub-satellite point is `ground_km` away along the surface.
double slant_range(double ground_km, double height_km, const GeometryConfig& geo = {});

/// Elevation of the satellite above the local horizon of the ground point.
/// Negative when the satellite is below the horizon.
double elevation_angle(double ground_km, double height_km, const GeometryConfig& geo = {});

/// Orbital period in seconds of a circular orbit at `height_km`.
double orbital_period(double height_km, const GeometryConfig& geo = {});

/// Largest ground distance at which a satellite at `height_km` is still at
/// or above the horizon, found by bracketing the root of elevation_angle.
double max_visible_ground_distance(double height_km, const GeometryConfig& geo = {});

Constellation node_positions(const GroundTrackLayout& layout, const GeometryConfig& geo = {});

/// Straight-line chord between two stations.
double pair_distance(const StationNode& n1, const StationNode& n2);

/// Surface distance between a ground station and the sub-satellite point of
/// `sat`, wrapped to [0, pi R_E].
double ground_separation(const StationNode& ground, const StationNode& sat,
                         const GeometryConfig& geo = {});

/// Elevation of `sat` seen from `ground`; `-pi/2` when the two are antipodal.
double elevation_between(const StationNode& ground, const StationNode& sat,
                         const GeometryConfig& geo = {});

}  // namespace satqr

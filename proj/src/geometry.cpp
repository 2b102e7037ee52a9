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

#include "satqr/geometry.hpp"

#include <boost/math/tools/roots.hpp>
#include <numbers>

#include "satqr/errors.hpp"

namespace satqr {

namespace {

constexpr double kPi = std::numbers::pi;

void check_ground_arc(double ground_km, double height_km, const GeometryConfig& geo) {
  if (!(ground_km >= 0.0)) throw DomainError("ground distance must be >= 0");
  if (!(height_km > 0.0)) throw DomainError("orbital height must be > 0");
  if (ground_km / geo.earth_radius_km >= kPi)
    throw DomainError("ground distance reaches the antipode (L_g/R_E >= pi)");
}

StationNode ground_node(std::string name, double angle, const GeometryConfig& geo) {
  StationNode n;
  n.name = std::move(name);
  n.angle_rad = angle;
  n.radius_km = geo.earth_radius_km;
  n.position = {geo.earth_radius_km * std::sin(angle), geo.earth_radius_km * std::cos(angle), 0.0};
  n.on_ground = true;
  n.role = NodeRole::Detector;
  return n;
}

StationNode sat_node(std::string name, double angle, double height_km, const GeometryConfig& geo) {
  StationNode n;
  const double r = geo.earth_radius_km + height_km;
  n.name = std::move(name);
  n.angle_rad = angle;
  n.radius_km = r;
  n.position = {r * std::sin(angle), r * std::cos(angle), 0.0};
  n.on_ground = false;
  n.role = NodeRole::Source;
  return n;
}

}  // namespace

void GeometryConfig::validate() const {
  if (!(earth_radius_km > 0) || !(earth_mass_kg > 0) || !(grav_const > 0) ||
      !(speed_of_light_m_s > 0))
    throw InvalidArgument("geometry constants must be strictly positive");
}

void GroundTrackLayout::validate() const {
  if (!(orbital_height_km > 0)) throw InvalidArgument("orbital height must be > 0");
  if (!(ground_distance_km >= 0)) throw InvalidArgument("ground distance must be >= 0");
  if (!std::isfinite(sat_a_offset) || !std::isfinite(sat_b_offset) ||
      !std::isfinite(sat_c_offset) || !std::isfinite(orbit_phase_s))
    throw InvalidArgument("satellite offsets and orbit phase must be finite");
}

double slant_range(double ground_km, double height_km, const GeometryConfig& geo) {
  check_ground_arc(ground_km, height_km, geo);
  const double re = geo.earth_radius_km;
  const double rs = re + height_km;
  const double gamma = ground_km / re;
  // re^2 + rs^2 - 2 re rs cos(gamma), written to avoid cancellation at small gamma.
  const double half = std::sin(0.5 * gamma);
  const double l2 = height_km * height_km + 4.0 * re * rs * half * half;
  return std::sqrt(l2);
}

double elevation_angle(double ground_km, double height_km, const GeometryConfig& geo) {
  const double l = slant_range(ground_km, height_km, geo);
  const double gamma = ground_km / geo.earth_radius_km;
  const double s = std::min(1.0, geo.earth_radius_km / l * std::sin(gamma));
  return kPi / 2 - gamma - std::asin(s);
}

double orbital_period(double height_km, const GeometryConfig& geo) {
  if (!(height_km >= 0)) throw DomainError("orbital height must be >= 0");
  const double r_m = (geo.earth_radius_km + height_km) * 1e3;
  return 2.0 * kPi * std::sqrt(r_m * r_m * r_m / (geo.earth_mass_kg * geo.grav_const));
}

double max_visible_ground_distance(double height_km, const GeometryConfig& geo) {
  if (!(height_km > 0)) throw DomainError("orbital height must be > 0");
  auto f = [&](double lg) { return elevation_angle(lg, height_km, geo); };
  // Elevation is pi/2 at the nadir and negative at half the circumference.
  double lo = 0.0;
  double hi = 0.5 * kPi * geo.earth_radius_km;
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t iters = 200;
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f(lo), f(hi), tol, iters);
  return 0.5 * (a + b);
}

Constellation node_positions(const GroundTrackLayout& layout, const GeometryConfig& geo) {
  layout.validate();
  const double re = geo.earth_radius_km;
  const double d = layout.ground_distance_km;
  const double omega = 2.0 * kPi / orbital_period(layout.orbital_height_km, geo);
  const double drift = omega * layout.orbit_phase_s;
  auto sat_angle = [&](double offset) { return (offset - 0.5) * d / re + drift; };

  Constellation c;
  c.a = ground_node("A", -0.5 * d / re, geo);
  c.b = ground_node("B", 0.5 * d / re, geo);
  c.sat_a = sat_node("S_A", sat_angle(layout.sat_a_offset), layout.orbital_height_km, geo);
  c.sat_c = sat_node("S_C", sat_angle(layout.sat_c_offset), layout.orbital_height_km, geo);
  c.sat_b = sat_node("S_B", sat_angle(layout.sat_b_offset), layout.orbital_height_km, geo);
  return c;
}

double pair_distance(const StationNode& n1, const StationNode& n2) {
  return (n1.position - n2.position).norm();
}

double ground_separation(const StationNode& ground, const StationNode& sat,
                         const GeometryConfig& geo) {
  double delta = std::remainder(sat.angle_rad - ground.angle_rad, 2.0 * kPi);
  return std::abs(delta) * geo.earth_radius_km;
}

double elevation_between(const StationNode& ground, const StationNode& sat,
                         const GeometryConfig& geo) {
  const double lg = ground_separation(ground, sat, geo);
  const double height = sat.radius_km - geo.earth_radius_km;
  if (lg / geo.earth_radius_km >= kPi) return -kPi / 2;
  return elevation_angle(lg, height, geo);
}

}  // namespace satqr

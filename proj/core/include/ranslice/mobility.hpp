#pragma once

#include <set>
#include <span>
#include <vector>

#include "ranslice/rng.hpp"
#include "ranslice/types.hpp"

namespace ranslice::mobility {

enum class CarKind { Flying, Ground };

inline constexpr double kMaxCruiseHeight = 300.0;    // m
inline constexpr double kMaxSpeed = 300.0 / 3.6;     // 300 km/h in m/s

struct Car {
  CarId id = 0;
  CarKind kind = CarKind::Ground;
  double x = 0.0;
  double y = 0.0;
  double height = 0.0;  // 0 for ground cars
  double speed = 0.0;   // m/s
  double heading = 0.0; // rad, 0 = +x
  std::set<ServiceId> subscribed_services;
};

struct ORU {
  OruId id = 0;
  double x = 0.0;
  double y = 0.0;
  double height = 0.0;
  double coverage_radius = 1.0;      // m
  double fronthaul_capacity = 1.0;   // b/s
  double fronthaul_length = 0.0;     // m
};

/// Throws std::invalid_argument on a negative or excessive speed, or a flying
/// car outside (0, 300] m.
void validate(const Car& car);
/// Throws std::invalid_argument unless coverage radius and fronthaul capacity are positive.
void validate(const ORU& oru);

/// Which way the dwell time is compared against the service budget.
///   Literal:   covered iff dwell <= budget (the rule as written).
///   Residence: covered iff dwell >= budget, i.e. the car stays long enough.
enum class DwellRule { Literal, Residence };

struct GeometryReport {
  double distance = 0.0;
  double remaining_distance = 0.0;
  double angle = 0.0;
  double dwell_time = 0.0;
  int coverage_prob = 0;
};

[[nodiscard]] double horizontal_distance(const Car& car, const ORU& oru);

/// sqrt(d_h^2 + (h_car - h_oru)^2); ground cars have h_car = 0.
[[nodiscard]] double distance(const Car& car, const ORU& oru);

/// Angle in [0, pi] between the car heading and the horizontal direction to the O-RU.
/// A car directly under/over the O-RU has angle 0.
[[nodiscard]] double angle_to(const Car& car, const ORU& oru);

[[nodiscard]] bool inside_coverage(const Car& car, const ORU& oru);

/// chi * cos(g), never negative.
[[nodiscard]] double remaining_distance(double distance, double angle);

/// 0 inside the coverage disc; chi*cos(g) when approaching; +inf when heading away.
[[nodiscard]] double remaining_distance(const Car& car, const ORU& oru);

/// Path length inside the coverage disc along the current heading: the distance to
/// the exit point when inside, the full chord when the heading crosses the disc
/// ahead, otherwise 0.
[[nodiscard]] double crossing_length(const Car& car, const ORU& oru);

/// crossing_length / speed; +inf for a stationary car.
[[nodiscard]] double dwell_time(const Car& car, const ORU& oru);

[[nodiscard]] int coverage_probability(double remaining, double dwell, double service_budget,
                                       DwellRule rule = DwellRule::Literal);
[[nodiscard]] int coverage_probability(const Car& car, const ORU& oru, double service_budget,
                                       DwellRule rule = DwellRule::Literal);

[[nodiscard]] GeometryReport geometry(const Car& car, const ORU& oru, double service_budget,
                                      DwellRule rule = DwellRule::Literal);

struct Bounds {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;

  [[nodiscard]] bool contains(double x, double y) const
  {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
};

/// Seeded heading random walk with reflection at the scenario bounds.
class MobilityModel {
 public:
  MobilityModel(Bounds bounds, double heading_sigma, Rng rng);

  /// Advances every car by speed*dt along its heading, then perturbs the heading by
  /// N(0, sigma*sqrt(dt)). dt = 0 leaves cars untouched.
  void step(std::span<Car> cars, double dt);

  [[nodiscard]] const Bounds& bounds() const { return bounds_; }

 private:
  void reflect(Car& car) const;

  Bounds bounds_;
  double heading_sigma_;
  Rng rng_;
};

}  // namespace ranslice::mobility

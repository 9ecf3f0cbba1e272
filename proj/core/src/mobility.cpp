#include "ranslice/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ranslice::mobility {

void validate(const Car& car)
{
  const std::string who = "car " + std::to_string(car.id);
  if (!(car.speed >= 0.0)) {
    throw std::invalid_argument(who + ": speed must be non-negative");
  }
  if (car.speed > kMaxSpeed + 1e-9) {
    throw std::invalid_argument(who + ": speed exceeds 300 km/h");
  }
  if (car.kind == CarKind::Flying && !(car.height > 0.0 && car.height <= kMaxCruiseHeight)) {
    throw std::invalid_argument(who + ": flying height must lie in (0, 300] m");
  }
  if (car.kind == CarKind::Ground && car.height != 0.0) {
    throw std::invalid_argument(who + ": ground cars have height 0");
  }
}

void validate(const ORU& oru)
{
  if (!(oru.coverage_radius > 0.0)) {
    throw std::invalid_argument("O-RU " + std::to_string(oru.id) + ": coverage radius must be positive");
  }
  if (!(oru.fronthaul_capacity > 0.0)) {
    throw std::invalid_argument("O-RU " + std::to_string(oru.id) + ": fronthaul capacity must be positive");
  }
  if (oru.fronthaul_length < 0.0) {
    throw std::invalid_argument("O-RU " + std::to_string(oru.id) + ": fronthaul length must be non-negative");
  }
}

double horizontal_distance(const Car& car, const ORU& oru)
{
  return std::hypot(car.x - oru.x, car.y - oru.y);
}

double distance(const Car& car, const ORU& oru)
{
  const double car_height = car.kind == CarKind::Flying ? car.height : 0.0;
  return std::hypot(horizontal_distance(car, oru), car_height - oru.height);
}

double angle_to(const Car& car, const ORU& oru)
{
  const double dx = oru.x - car.x;
  const double dy = oru.y - car.y;
  if (dx == 0.0 && dy == 0.0) {
    return 0.0;
  }
  double diff = std::atan2(dy, dx) - car.heading;
  diff = std::remainder(diff, 2.0 * std::numbers::pi);
  return std::abs(diff);
}

bool inside_coverage(const Car& car, const ORU& oru)
{
  return horizontal_distance(car, oru) <= oru.coverage_radius;
}

double remaining_distance(double distance, double angle)
{
  return std::max(0.0, distance * std::cos(angle));
}

double remaining_distance(const Car& car, const ORU& oru)
{
  if (inside_coverage(car, oru)) {
    return 0.0;
  }
  const double cos_g = std::cos(angle_to(car, oru));
  if (cos_g <= 0.0) {
    return kInfinity;
  }
  return distance(car, oru) * cos_g;
}

double crossing_length(const Car& car, const ORU& oru)
{
  // Ray p + t*u against the circle |q| = r in the horizontal plane.
  const double px = car.x - oru.x;
  const double py = car.y - oru.y;
  const double ux = std::cos(car.heading);
  const double uy = std::sin(car.heading);
  const double r = oru.coverage_radius;
  const double b = px * ux + py * uy;
  const double c = px * px + py * py - r * r;
  const double disc = b * b - c;
  if (disc < 0.0) {
    return 0.0;
  }
  const double root = std::sqrt(disc);
  const double t_exit = -b + root;
  if (t_exit <= 0.0) {
    return 0.0;
  }
  const double t_enter = std::max(0.0, -b - root);
  return t_exit - t_enter;
}

double dwell_time(const Car& car, const ORU& oru)
{
  if (car.speed <= 0.0) {
    return kInfinity;
  }
  return crossing_length(car, oru) / car.speed;
}

int coverage_probability(double remaining, double dwell, double service_budget, DwellRule rule)
{
  if (remaining > 0.0) {
    return 0;
  }
  if (std::isinf(dwell)) {
    return 1;
  }
  const bool ok = rule == DwellRule::Literal ? dwell <= service_budget : dwell >= service_budget;
  return ok ? 1 : 0;
}

int coverage_probability(const Car& car, const ORU& oru, double service_budget, DwellRule rule)
{
  return coverage_probability(remaining_distance(car, oru), dwell_time(car, oru), service_budget, rule);
}

GeometryReport geometry(const Car& car, const ORU& oru, double service_budget, DwellRule rule)
{
  GeometryReport report;
  report.distance = distance(car, oru);
  report.angle = angle_to(car, oru);
  report.remaining_distance = remaining_distance(car, oru);
  report.dwell_time = dwell_time(car, oru);
  report.coverage_prob = coverage_probability(report.remaining_distance, report.dwell_time, service_budget, rule);
  return report;
}

MobilityModel::MobilityModel(Bounds bounds, double heading_sigma, Rng rng)
    : bounds_(bounds), heading_sigma_(heading_sigma), rng_(std::move(rng))
{
  if (!(bounds_.x_max > bounds_.x_min && bounds_.y_max > bounds_.y_min)) {
    throw std::invalid_argument("mobility: bounds must have positive extent");
  }
  if (heading_sigma_ < 0.0) {
    throw std::invalid_argument("mobility: heading sigma must be non-negative");
  }
}

void MobilityModel::reflect(Car& car) const
{
  for (int guard = 0; guard < 64 && !bounds_.contains(car.x, car.y); ++guard) {
    if (car.x < bounds_.x_min) {
      car.x = 2.0 * bounds_.x_min - car.x;
      car.heading = std::numbers::pi - car.heading;
    } else if (car.x > bounds_.x_max) {
      car.x = 2.0 * bounds_.x_max - car.x;
      car.heading = std::numbers::pi - car.heading;
    }
    if (car.y < bounds_.y_min) {
      car.y = 2.0 * bounds_.y_min - car.y;
      car.heading = -car.heading;
    } else if (car.y > bounds_.y_max) {
      car.y = 2.0 * bounds_.y_max - car.y;
      car.heading = -car.heading;
    }
  }
  // A step longer than the area itself: fall back to clamping.
  car.x = std::clamp(car.x, bounds_.x_min, bounds_.x_max);
  car.y = std::clamp(car.y, bounds_.y_min, bounds_.y_max);
  car.heading = std::remainder(car.heading, 2.0 * std::numbers::pi);
}

void MobilityModel::step(std::span<Car> cars, double dt)
{
  if (dt < 0.0) {
    throw std::invalid_argument("mobility: dt must be non-negative");
  }
  if (dt == 0.0) {
    return;
  }
  std::normal_distribution<double> noise(0.0, heading_sigma_ * std::sqrt(dt));
  for (auto& car : cars) {
    car.x += car.speed * dt * std::cos(car.heading);
    car.y += car.speed * dt * std::sin(car.heading);
    reflect(car);
    if (heading_sigma_ > 0.0) {
      car.heading = std::remainder(car.heading + noise(rng_), 2.0 * std::numbers::pi);
    }
  }
}

}  // namespace ranslice::mobility

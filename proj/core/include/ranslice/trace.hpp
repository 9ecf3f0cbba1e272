#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "ranslice/mobility.hpp"

namespace ranslice::mobility {

class TraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TracePoint {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double h = 0.0;
};

/// Recorded mobility trace. CSV columns: t_s,car_id,x_m,y_m,h_m (header required).
/// Positions between samples are linearly interpolated; outside the recorded span
/// the first/last sample is held.
class Trace {
 public:
  [[nodiscard]] static Trace parse(std::string_view csv_text);
  [[nodiscard]] static Trace load(const std::filesystem::path& path);

  [[nodiscard]] bool has_car(CarId id) const { return points_.contains(id); }
  [[nodiscard]] std::size_t car_count() const { return points_.size(); }
  [[nodiscard]] TracePoint at(CarId id, double t) const;

  /// Moves traced cars to their position at time t; heading and speed follow the
  /// segment containing t. Cars without a trace are left alone.
  void apply(std::span<Car> cars, double t) const;

 private:
  std::map<CarId, std::vector<TracePoint>> points_;
};

}  // namespace ranslice::mobility

#include "ranslice/trace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace ranslice::mobility {

namespace {

std::vector<std::string> split_csv(const std::string& line)
{
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    out.push_back(first == std::string::npos ? std::string() : cell.substr(first, last - first + 1));
  }
  return out;
}

double to_number(const std::string& cell, std::size_t line_no)
{
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size() || !std::isfinite(v)) {
      throw std::invalid_argument(cell);
    }
    return v;
  } catch (const std::exception&) {
    throw TraceError("trace line " + std::to_string(line_no) + ": '" + cell + "' is not a number");
  }
}

}  // namespace

Trace Trace::parse(std::string_view csv_text)
{
  std::stringstream in{std::string(csv_text)};
  std::string line;
  std::size_t line_no = 0;
  Trace trace;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    const auto cells = split_csv(line);
    if (!header_seen) {
      const std::vector<std::string> expected{"t_s", "car_id", "x_m", "y_m", "h_m"};
      if (cells != expected) {
        throw TraceError("trace line " + std::to_string(line_no) + ": expected header t_s,car_id,x_m,y_m,h_m");
      }
      header_seen = true;
      continue;
    }
    if (cells.size() != 5) {
      throw TraceError("trace line " + std::to_string(line_no) + ": expected 5 columns");
    }
    const double id = to_number(cells[1], line_no);
    if (id < 0 || id != std::floor(id)) {
      throw TraceError("trace line " + std::to_string(line_no) + ": car_id must be a non-negative integer");
    }
    TracePoint p{to_number(cells[0], line_no), to_number(cells[2], line_no), to_number(cells[3], line_no),
                 to_number(cells[4], line_no)};
    trace.points_[static_cast<CarId>(id)].push_back(p);
  }
  if (!header_seen) {
    throw TraceError("trace: empty file");
  }
  for (auto& [id, pts] : trace.points_) {
    std::stable_sort(pts.begin(), pts.end(), [](const TracePoint& a, const TracePoint& b) { return a.t < b.t; });
  }
  return trace;
}

Trace Trace::load(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw TraceError("cannot open trace " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

TracePoint Trace::at(CarId id, double t) const
{
  const auto& pts = points_.at(id);
  if (t <= pts.front().t) {
    return pts.front();
  }
  if (t >= pts.back().t) {
    return pts.back();
  }
  const auto hi = std::upper_bound(pts.begin(), pts.end(), t, [](double v, const TracePoint& p) { return v < p.t; });
  const auto lo = hi - 1;
  const double span = hi->t - lo->t;
  const double w = span > 0.0 ? (t - lo->t) / span : 0.0;
  return {t, lo->x + w * (hi->x - lo->x), lo->y + w * (hi->y - lo->y), lo->h + w * (hi->h - lo->h)};
}

void Trace::apply(std::span<Car> cars, double t) const
{
  for (auto& car : cars) {
    const auto it = points_.find(car.id);
    if (it == points_.end()) {
      continue;
    }
    const auto p = at(car.id, t);
    const auto& pts = it->second;
    auto hi = std::upper_bound(pts.begin(), pts.end(), t, [](double v, const TracePoint& q) { return v < q.t; });
    if (hi == pts.end() || hi == pts.begin()) {
      car.speed = 0.0;
    } else {
      const auto lo = hi - 1;
      const double dt = hi->t - lo->t;
      const double dx = hi->x - lo->x;
      const double dy = hi->y - lo->y;
      car.speed = dt > 0.0 ? std::min(std::hypot(dx, dy) / dt, kMaxSpeed) : 0.0;
      if (dx != 0.0 || dy != 0.0) {
        car.heading = std::atan2(dy, dx);
      }
    }
    car.x = p.x;
    car.y = p.y;
    if (car.kind == CarKind::Flying) {
      car.height = std::clamp(p.h, 1e-3, kMaxCruiseHeight);
    }
  }
}

}  // namespace ranslice::mobility

#include "ranslice/mm1.hpp"

#include <deque>
#include <queue>
#include <stdexcept>
#include <vector>

namespace ranslice::delay {

namespace {

enum class EventKind { Arrival, Departure };

struct Event {
  double time = 0.0;
  EventKind kind = EventKind::Arrival;
  std::uint64_t seq = 0;

  // Min-heap on time, then insertion order.
  bool operator>(const Event& other) const
  {
    return time != other.time ? time > other.time : seq > other.seq;
  }
};

}  // namespace

Mm1Result simulate_mm1(double arrival_rate, double service_rate, std::uint64_t packets, Rng& rng)
{
  if (!(arrival_rate > 0.0) || !(service_rate > 0.0)) {
    throw std::invalid_argument("simulate_mm1: rates must be positive");
  }
  std::exponential_distribution<double> interarrival(arrival_rate);
  std::exponential_distribution<double> service(service_rate);

  std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
  std::uint64_t seq = 0;
  events.push({interarrival(rng), EventKind::Arrival, seq++});

  std::deque<double> arrival_times;  // FIFO, front is in service
  double service_start = 0.0;
  double now = 0.0;
  double area = 0.0;  // integral of number in system
  double sojourn_sum = 0.0;
  double wait_sum = 0.0;
  std::uint64_t departed = 0;

  while (departed < packets) {
    const Event ev = events.top();
    events.pop();
    area += static_cast<double>(arrival_times.size()) * (ev.time - now);
    now = ev.time;

    if (ev.kind == EventKind::Arrival) {
      arrival_times.push_back(now);
      if (arrival_times.size() == 1) {
        service_start = now;
        events.push({now + service(rng), EventKind::Departure, seq++});
      }
      events.push({now + interarrival(rng), EventKind::Arrival, seq++});
    } else {
      const double arrived = arrival_times.front();
      arrival_times.pop_front();
      sojourn_sum += now - arrived;
      wait_sum += service_start - arrived;
      ++departed;
      if (!arrival_times.empty()) {
        service_start = now;
        events.push({now + service(rng), EventKind::Departure, seq++});
      }
    }
  }

  Mm1Result r;
  r.packets = departed;
  r.horizon = now;
  if (departed > 0) {
    r.mean_sojourn = sojourn_sum / static_cast<double>(departed);
    r.mean_queue_wait = wait_sum / static_cast<double>(departed);
  }
  r.mean_in_system = now > 0.0 ? area / now : 0.0;
  return r;
}

}  // namespace ranslice::delay

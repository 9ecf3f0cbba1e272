#pragma once

#include <complex>
#include <compare>
#include <span>
#include <vector>

#include "ranslice/rng.hpp"
#include "ranslice/types.hpp"

namespace ranslice::radio {

/// OFDM numerology: 15*2^i kHz subcarrier spacing, 12 subcarriers per RB,
/// 1 ms / 2^i TTI.
struct Numerology {
  int index = 1;
  double subcarrier_spacing_hz = 30e3;
  int subcarriers_per_rb = 12;
  double tti_duration_s = 0.5e-3;

  [[nodiscard]] static Numerology from_index(int index);
  [[nodiscard]] double rb_bandwidth_hz() const { return subcarrier_spacing_hz * subcarriers_per_rb; }
};

/// Subband x TTI scheduling grid of one slice.
struct RbGrid {
  Numerology numerology;
  int subbands = 0;
  int ttis = 1;

  [[nodiscard]] RbCount rb_count() const { return static_cast<RbCount>(subbands) * ttis; }
};

enum class PathLossMode {
  PowerLaw,  // chi^-alpha
  Literal,   // multiply by chi
};

struct ChannelParams {
  double path_loss_exponent = 2.0;
  double error_variance = 0.01;
  double tx_power_w = 0.1;
  double noise_power_w = 1e-9;
  PathLossMode mode = PathLossMode::PowerLaw;
};

struct ChannelState {
  std::complex<double> estimated_csi{1.0, 0.0};
  std::complex<double> estimation_error{0.0, 0.0};
  double tx_power_w = 1.0;
  double noise_power_w = 1.0;

  /// |h_est + e|^2
  [[nodiscard]] double gain() const { return std::norm(estimated_csi + estimation_error); }
};

/// placed * |h|^2 * p * PL(chi) / sigma^2. Throws std::domain_error for distance <= 0
/// and std::invalid_argument for non-positive power or noise.
[[nodiscard]] double snr(const ChannelState& channel, double distance, int placed, double path_loss_exponent = 2.0,
                         PathLossMode mode = PathLossMode::PowerLaw);

/// Shannon rate of one RB in b/s: bandwidth * coverage * log2(1 + snr).
[[nodiscard]] double rb_rate(const Numerology& numerology, double snr, int coverage);

struct RbIndex {
  int tti = 0;
  int subband = 0;

  auto operator<=>(const RbIndex&) const = default;
};

struct RBAssignment {
  CarId car_id = 0;
  OruId oru_id = 0;
  SliceId slice_id = 0;
  RbIndex rb;
  int decision = 1;
};

/// Sum of rates[i] over assignments[i] held by car with decision 1.
/// Throws std::invalid_argument when the spans differ in length.
[[nodiscard]] double car_rate(CarId car, std::span<const RBAssignment> assignments, std::span<const double> rates);

struct OrthogonalityViolation {
  RbIndex rb;
  std::vector<CarId> cars;
};

/// Every RB held (decision 1) by more than one distinct car.
[[nodiscard]] std::vector<OrthogonalityViolation> check_orthogonality(std::span<const RBAssignment> assignments);

/// Imperfect CSI: estimate ~ CN(0, 1), error ~ CN(0, error_variance).
class ChannelSampler {
 public:
  ChannelSampler(Rng rng, const ChannelParams& params);

  [[nodiscard]] ChannelState sample();

 private:
  Rng rng_;
  ChannelParams params_;
  std::normal_distribution<double> unit_{0.0, 1.0};
};

}  // namespace ranslice::radio

#pragma once

#include <cstdint>
#include <limits>

namespace ranslice {

using TenantId = std::uint32_t;
using ServiceId = std::uint32_t;
using SliceId = std::uint32_t;
using VoduId = std::uint32_t;
using CarId = std::uint32_t;
using OruId = std::uint32_t;

/// Resource blocks are counted, never fractional.
using RbCount = std::int64_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace ranslice

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace retrodict {

using Engine = std::mt19937_64;

/// Derive an independent engine for the substream addressed by `path` under
/// `seed`. The same (seed, path) always yields the same engine state, so work
/// can be partitioned across threads in any order.
Engine make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

/// 64-bit finalizer used to combine seed components.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace retrodict

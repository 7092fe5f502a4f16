#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sle {

/// Identifier of the seed-splitting rule, recorded in every Monte Carlo report.
inline constexpr std::string_view kSeedRuleVersion = "splitmix64-mt19937_64-v1";

/// One SplitMix64 output step applied to x.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of path `index` under master seed `master`:
///   splitmix64(master ^ splitmix64(index + 1)).
/// Streams for distinct (master, index) pairs are independent for all practical purposes, and the
/// value does not depend on how paths are scheduled across workers.
constexpr std::uint64_t path_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 1));
}

/// Generator used for all sampling; Gaussian variates come from std::normal_distribution on it.
using Engine = std::mt19937_64;

}  // namespace sle

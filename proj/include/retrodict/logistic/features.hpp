#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "retrodict/logistic/scan.hpp"

namespace retrodict::logistic {

struct FeatureOptions {
  double step_threshold = 0.3;  // nats between adjacent samples
  double dip_threshold = 0.3;   // nats below the local median
  double max_spacing = 0.002;   // coarser neighbours leave a feature unresolved
  double window = 0.05;         // half-width of the sliding median window
  double chaos_onset = 3.57;    // dips are searched above this r
};

struct Feature {
  std::string kind;  // "step" or "dip"
  double r_low = 0.0;
  double r_high = 0.0;
  double magnitude = 0.0;  // signed jump for steps, depth below the median for dips
  bool resolved = true;
};

struct FeatureReport {
  std::size_t tau = 0;
  std::vector<Feature> features;

  std::vector<Feature> of_kind(const std::string& kind) const;
};

/// Step edges are jumps above step_threshold between adjacent r samples;
/// runs of same-signed jumps merge into one edge. Dips are runs of points at
/// least dip_threshold below the median of their +-window neighbourhood.
FeatureReport feature_detect(const ScanResult& result, std::size_t tau, const FeatureOptions& options = {});

/// {"tau": ..., "features": [{"kind", "r_low", "r_high", "magnitude", "resolved"}, ...]}
std::string features_to_json(const FeatureReport& report);

}  // namespace retrodict::logistic

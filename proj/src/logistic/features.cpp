#include "retrodict/logistic/features.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "retrodict/format.hpp"

namespace retrodict::logistic {

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool spacing_ok(const std::vector<ScanPoint>& pts, std::size_t i, const FeatureOptions& o) {
  // Allow rounding in grids built by repeated addition.
  return pts[i + 1].r - pts[i].r <= o.max_spacing * (1.0 + 1e-6);
}

void detect_steps(const std::vector<ScanPoint>& pts, const FeatureOptions& o, std::vector<Feature>& out) {
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double jump = pts[i + 1].mean - pts[i].mean;
    if (std::abs(jump) <= o.step_threshold) continue;
    const bool resolved = spacing_ok(pts, i, o);
    if (!out.empty() && out.back().kind == "step" && out.back().r_high == pts[i].r &&
        (out.back().magnitude > 0) == (jump > 0) && out.back().resolved == resolved) {
      out.back().r_high = pts[i + 1].r;
      out.back().magnitude += jump;
      continue;
    }
    out.push_back({"step", pts[i].r, pts[i + 1].r, jump, resolved});
  }
}

void detect_dips(const std::vector<ScanPoint>& pts, const FeatureOptions& o, std::vector<Feature>& out) {
  std::vector<double> depth(pts.size(), 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].r < o.chaos_onset) continue;
    std::vector<double> window;
    for (const auto& p : pts) {
      if (p.r >= o.chaos_onset && std::abs(p.r - pts[i].r) <= o.window) window.push_back(p.mean);
    }
    depth[i] = median(window) - pts[i].mean;
  }
  std::size_t i = 0;
  while (i < pts.size()) {
    if (pts[i].r < o.chaos_onset || depth[i] < o.dip_threshold) {
      ++i;
      continue;
    }
    std::size_t j = i;
    double deepest = depth[i];
    bool resolved = true;
    while (j + 1 < pts.size() && depth[j + 1] >= o.dip_threshold) {
      resolved = resolved && spacing_ok(pts, j, o);
      ++j;
      deepest = std::max(deepest, depth[j]);
    }
    if (i > 0) resolved = resolved && spacing_ok(pts, i - 1, o);
    if (j + 1 < pts.size()) resolved = resolved && spacing_ok(pts, j, o);
    out.push_back({"dip", pts[i].r, pts[j].r, deepest, resolved});
    i = j + 1;
  }
}

}  // namespace

std::vector<Feature> FeatureReport::of_kind(const std::string& kind) const {
  std::vector<Feature> out;
  std::copy_if(features.begin(), features.end(), std::back_inserter(out), [&](const auto& f) { return f.kind == kind; });
  return out;
}

FeatureReport feature_detect(const ScanResult& result, std::size_t tau, const FeatureOptions& options) {
  FeatureReport report;
  report.tau = tau;
  const auto pts = result.for_tau(tau);
  detect_steps(pts, options, report.features);
  detect_dips(pts, options, report.features);
  return report;
}

std::string features_to_json(const FeatureReport& report) {
  std::ostringstream out;
  out << "{\n  \"tau\": " << report.tau << ",\n  \"features\": [";
  for (std::size_t i = 0; i < report.features.size(); ++i) {
    const auto& f = report.features[i];
    out << (i ? ",\n" : "\n") << "    {\"kind\": \"" << f.kind << "\", \"r_low\": " << format_number(f.r_low)
        << ", \"r_high\": " << format_number(f.r_high) << ", \"magnitude\": " << format_number(f.magnitude)
        << ", \"resolved\": " << (f.resolved ? "true" : "false") << "}";
  }
  out << (report.features.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return out.str();
}

}  // namespace retrodict::logistic

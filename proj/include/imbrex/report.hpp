#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

namespace imbrex {

using ojson = nlohmann::ordered_json;

/// Verdict of one axiom check.  On failure the witness carries a
/// "violated" key naming the axiom instance that broke.
struct AxiomReport {
  std::string axiom;
  bool pass = true;
  ojson witness;  // null when there is nothing to report
  std::int64_t ms = 0;

  ojson to_json() const;
  static AxiomReport from_json(const nlohmann::json& j);
};

/// Controls the large scans.  Without `sample` the scan is exhaustive.
struct ScanOptions {
  std::optional<std::size_t> sample;
  std::uint64_t seed = 0;
  /// Keep scanning after the first violation and count all of them.
  bool exhaustive_report = false;
};

/// Default policy: exhaustive up to 500 points, 10^5 samples above.
ScanOptions default_scan(std::size_t point_count);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline AxiomReport passed(std::string axiom, ojson certificate = nullptr) {
  return {std::move(axiom), true, std::move(certificate), 0};
}

inline AxiomReport failed(std::string axiom, std::string violated, ojson witness = ojson::object()) {
  ojson w = ojson::object();
  w["violated"] = std::move(violated);
  for (auto& [k, v] : witness.items()) w[k] = v;
  return {std::move(axiom), false, std::move(w), 0};
}

}  // namespace imbrex

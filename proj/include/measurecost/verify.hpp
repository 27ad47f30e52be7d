#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace measurecost {

struct PropertyResult {
  std::string name;
  double residual = 0;   // worst violation observed; 0 when the property holds exactly
  double tolerance = 0;
  bool passed() const { return residual <= tolerance; }
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  /// Adds a device with U_SM = I to the implementation check (negative control).
  bool inject_fault = false;
};

/// Seeded property suites over random instruments, devices and states.
std::vector<PropertyResult> run_verification(const VerifyOptions& options);

}  // namespace measurecost

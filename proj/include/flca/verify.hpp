#pragma once
// Randomized certification sweeps: every instance is checked against the
// structural invariants, the offline recomputation, and (within the size
// guards) the exhaustive brute-force ground truth. Failures are shrunk to a
// minimal counterexample before being reported.

#include <cstdint>
#include <string>

namespace flca {

struct VerifyOptions {
  std::int32_t n_max = 10;
  std::int32_t f_max = 3;
  std::int32_t instances = 1000;
  std::uint64_t seed = 1;
  bool edge_faults = false;  // also enumerate mixed vertex/edge fault sets
  bool corrupt = false;      // negative control: falsify one answer per
                             // instance, so the sweep must fail
};

struct VerifyResult {
  bool ok = false;
  std::int64_t instances_checked = 0;
  std::int64_t checks_passed = 0;
  std::string report;  // full human-readable report, counterexample included
};

// Throws Error(InstanceTooLarge) when the options put the exhaustive checks
// past their enumeration guards; that is a flag-validation failure, not a
// discrepancy.
VerifyResult run_verification(const VerifyOptions& options);

}  // namespace flca

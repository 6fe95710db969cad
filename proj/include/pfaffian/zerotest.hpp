#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "pfaffian/expr.hpp"

namespace pfaffian {

// Raised when the sampling domain is almost everywhere singular: the
// retry cap (100 * probes) was exhausted before enough valid sample
// points were found. Never silently reported as zero.
struct IndeterminateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class VerdictTag { StructuralZero, ProbablyZero, NonZero };

const char* verdict_name(VerdictTag t);

// Three-valued outcome of zero-testing. StructuralZero means the
// canonicalizer reduced the expression to the constant 0. ProbablyZero
// records the probe count, tolerance and derived stream seed so the
// run can be reproduced. NonZero carries one witness point whose value
// exceeds the (relative) tolerance.
struct ZeroVerdict {
  VerdictTag tag = VerdictTag::StructuralZero;
  int probes = 0;
  double tol = 0.0;
  std::uint64_t stream_seed = 0;
  std::map<std::string, double> witness;
  double witness_value = 0.0;
  double witness_threshold = 0.0;

  bool is_zeroish() const { return tag != VerdictTag::NonZero; }
  bool is_structural() const { return tag == VerdictTag::StructuralZero; }
};

struct Interval {
  double lo = -2.0;
  double hi = 2.0;
};

struct ZeroTestConfig {
  std::uint64_t seed = 0;
  int probes = 32;
  double tol = 1e-9;  // relative to the largest intermediate magnitude
  Interval default_domain{-2.0, 2.0};
  std::map<std::string, Interval> domain;  // per-variable overrides
  // Optional sample-point filter (e.g. keep ||v|| away from 0);
  // rejected points are resampled and count against the retry cap.
  std::function<bool(const std::map<std::string, double>&)> accept;
};

// Simplifies, then probes at seeded random points. The probe stream
// seed is derived from config.seed and the expression's structural
// hash, so independent call sites stay deterministic.
ZeroVerdict is_zero(const Expr& e, const ZeroTestConfig& cfg = {});

// Re-runs the probe loop from a previously recorded stream seed.
ZeroVerdict reprobe(const Expr& e, std::uint64_t stream_seed,
                    const ZeroTestConfig& cfg = {});

// The only equality used anywhere: the zero verdict of a - b.
ZeroVerdict equals(const Expr& a, const Expr& b,
                   const ZeroTestConfig& cfg = {});

}  // namespace pfaffian

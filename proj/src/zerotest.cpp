#include "pfaffian/zerotest.hpp"

#include <cmath>
#include <random>

namespace pfaffian {

const char* verdict_name(VerdictTag t) {
  switch (t) {
    case VerdictTag::StructuralZero: return "structural-zero";
    case VerdictTag::ProbablyZero: return "probably-zero";
    case VerdictTag::NonZero: return "nonzero";
  }
  return "?";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

ZeroVerdict probe_loop(const Expr& s, std::uint64_t stream_seed,
                       const ZeroTestConfig& cfg) {
  ZeroVerdict out;
  out.probes = cfg.probes;
  out.tol = cfg.tol;
  out.stream_seed = stream_seed;

  auto vars = s.variables();
  std::mt19937_64 rng(stream_seed);
  const long long cap = 100LL * cfg.probes;
  long long attempts = 0;
  int accepted = 0;
  while (accepted < cfg.probes) {
    if (++attempts > cap)
      throw IndeterminateError(
          "zero test: sampling domain almost everywhere singular (retry cap "
          "exhausted after " +
          std::to_string(cap) + " attempts)");
    std::map<std::string, double> point;
    for (const auto& v : vars) {
      Interval iv = cfg.default_domain;
      auto it = cfg.domain.find(v);
      if (it != cfg.domain.end()) iv = it->second;
      std::uniform_real_distribution<double> dist(iv.lo, iv.hi);
      point[v] = dist(rng);
    }
    if (cfg.accept && !cfg.accept(point)) continue;
    double scale = 0.0;
    double v;
    try {
      v = s.eval_scaled(point, scale);
    } catch (const EvalError&) {
      continue;  // singular sample point: resample
    }
    double threshold = cfg.tol * scale;
    if (std::abs(v) > threshold) {
      out.tag = VerdictTag::NonZero;
      out.witness = std::move(point);
      out.witness_value = v;
      out.witness_threshold = threshold;
      return out;
    }
    ++accepted;
  }
  out.tag = VerdictTag::ProbablyZero;
  return out;
}

}  // namespace

ZeroVerdict is_zero(const Expr& e, const ZeroTestConfig& cfg) {
  Expr s = simplify(e);
  if (s.is_zero_const()) {
    ZeroVerdict out;
    out.tag = VerdictTag::StructuralZero;
    out.tol = cfg.tol;
    return out;
  }
  std::uint64_t stream = splitmix64(cfg.seed ^ (0xa5a5a5a5ULL + s.hash()));
  return probe_loop(s, stream, cfg);
}

ZeroVerdict reprobe(const Expr& e, std::uint64_t stream_seed,
                    const ZeroTestConfig& cfg) {
  Expr s = simplify(e);
  if (s.is_zero_const()) {
    ZeroVerdict out;
    out.tag = VerdictTag::StructuralZero;
    out.tol = cfg.tol;
    return out;
  }
  return probe_loop(s, stream_seed, cfg);
}

ZeroVerdict equals(const Expr& a, const Expr& b, const ZeroTestConfig& cfg) {
  return is_zero(a - b, cfg);
}

}  // namespace pfaffian

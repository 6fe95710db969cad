#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfaffian/forms.hpp"

namespace pfaffian {

// The input 1-form itself carries a zero verdict; the class is defined
// for nonzero forms only.
struct ZeroFormError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A point where the form's covector vanishes (a "singularity").
struct SingularPointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SequenceEntry {
  int p = 0;
  DiffForm form;
  FormVerdict verdict;
};

// I_0 = w, I_1 = dw, I_2 = w^dw, I_3 = dw^dw, ... ending at the first
// entry with a zero verdict (possibly forced dimensionally). The odd
// entries are cross-checked against the power rule I_{2k-1} = (I_1)^k.
struct IntegrabilitySequence {
  std::vector<SequenceEntry> entries;
  std::vector<FormVerdict> power_consistency;  // one per odd entry

  const SequenceEntry& terminal() const { return entries.back(); }
};

IntegrabilitySequence integrability_sequence(const DiffForm& omega,
                                             const ZeroTestConfig& cfg);

std::string canonical_tag_text(int cartan_class);

struct PfaffReport {
  int cartan_class = 0;     // smallest p with I_p = 0
  int codimension = 0;      // m = ceil(p/2)
  int max_integral_dim = 0; // n - m
  std::string canonical_tag;
  bool exact = true;        // false when the deciding verdict was probed
  IntegrabilitySequence sequence;

  VerdictTag weakest() const {
    return exact ? VerdictTag::StructuralZero : VerdictTag::ProbablyZero;
  }
};

PfaffReport cartan_class(const DiffForm& omega, const ZeroTestConfig& cfg);

struct FrobeniusResult {
  DiffForm three_form;    // w ^ dw
  FormVerdict verdict;    // zero <=> completely integrable
};

FrobeniusResult frobenius_test(const DiffForm& omega,
                               const ZeroTestConfig& cfg);

// The classical cyclic component expression on a 3-coordinate chart:
// w1(w2,3 - w3,2) + w2(w3,1 - w1,3) + w3(w1,2 - w2,1), where commas
// denote partial derivatives.
Expr frobenius_component(const DiffForm& omega);

// Candidate normal-form decomposition: an optional exact part d(lambda)
// plus integrating-factor pairs mu_h d(nu_h).
struct DecompositionCandidate {
  std::optional<Expr> lambda;
  std::vector<std::pair<Expr, Expr>> pairs;

  int implied_class() const {
    return 2 * static_cast<int>(pairs.size()) + (lambda ? 1 : 0);
  }
};

struct DecompositionCheck {
  FormVerdict match;        // zero verdict of omega - built
  DiffForm built;
  int implied_class = 0;
  int reported_class = 0;
  bool class_consistent = false;
};

DiffForm build_decomposition(const ChartPtr& chart,
                             const DecompositionCandidate& cand);
DecompositionCheck verify_decomposition(const DiffForm& omega,
                                        const DecompositionCandidate& cand,
                                        const ZeroTestConfig& cfg);

// Numeric basis of Ann[w] at a point; throws SingularPointError when
// the covector vanishes there.
std::vector<std::vector<double>> annihilator_basis(
    const DiffForm& omega, const std::map<std::string, double>& point,
    double tol = 1e-9);

}  // namespace pfaffian

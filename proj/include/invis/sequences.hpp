#pragma once

#include <limits>
#include <string>
#include <vector>

namespace invis {

enum class PolicyKind { ThinLimit, ConstantFraction, Explicit };

struct SequencePolicy {
  PolicyKind kind = PolicyKind::ConstantFraction;
  double gamma = 0.5;
  std::vector<double> explicit_a;

  static SequencePolicy thin_limit() { return {PolicyKind::ThinLimit, 0.0, {}}; }
  static SequencePolicy constant_fraction(double g = 0.5) { return {PolicyKind::ConstantFraction, g, {}}; }
  static SequencePolicy explicit_list(std::vector<double> a) { return {PolicyKind::Explicit, 0.0, std::move(a)}; }
};

/// Abscissas c_0 > ... > c_N > 0 and focus abscissas a_1 ... a_N.
struct SequencePair {
  std::vector<double> c;  // size N+1
  std::vector<double> a;  // a[0] = +inf, then a_1..a_N; size N+1
  SequencePolicy policy;

  int depth() const { return static_cast<int>(c.size()) - 1; }
  double c0() const { return c.front(); }
};

SequencePair generate_sequences(double c, double c1, const SequencePolicy& policy, int N);

/// Result of re-checking the admissibility inequalities and the recurrence.
struct SequenceAudit {
  bool ok = true;
  std::string first_failure;
};

SequenceAudit audit_sequences(const SequencePair& seq);

/// Next abscissa from the recurrence.
double next_abscissa(double c_prev, double c_cur, double a_cur);

}  // namespace invis

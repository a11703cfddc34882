#include "invis/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "invis/errors.hpp"

namespace invis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Empty string when a_i is admissible.
std::string check_step(int i, double a_prev, double a_i, double c_prev, double c_i, bool thin) {
  if (thin) {
    if (a_i != 0.0) return "a_" + std::to_string(i) + " must be 0 in the thin limit";
  } else {
    if (!(a_i > 0.0)) return "a_" + std::to_string(i) + " = " + fmt(a_i) + " violates 0 < a_i";
    if (!(a_i < a_prev))
      return "a_" + std::to_string(i) + " = " + fmt(a_i) + " violates a_i < a_{i-1} (a_{i-1} = " + fmt(a_prev) + ")";
  }
  const double lhs = a_i * (c_prev - 2.0 * c_i);
  if (!(lhs < c_i * c_i))
    return "a_" + std::to_string(i) + " = " + fmt(a_i) + " violates a_i*(c_{i-1} - 2*c_i) < c_i^2 (" + fmt(lhs) +
           " >= " + fmt(c_i * c_i) + ")";
  return {};
}

}  // namespace

double next_abscissa(double c_prev, double c_cur, double a_cur) {
  return (c_cur + a_cur) * (c_cur + a_cur) / (c_prev + a_cur) - a_cur;
}

SequencePair generate_sequences(double c, double c1, const SequencePolicy& policy, int N) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidSeed("c must be positive and finite");
  if (!(c1 > 0.0 && c1 < c)) throw InvalidSeed("c1 must satisfy 0 < c1 < c");
  if (N < 1) throw InvalidSeed("depth must be at least 1");
  if (policy.kind == PolicyKind::ConstantFraction && !(policy.gamma > 0.0 && policy.gamma < 1.0))
    throw InvalidSeed("gamma must lie in (0, 1)");
  if (policy.kind == PolicyKind::Explicit && static_cast<int>(policy.explicit_a.size()) < N)
    throw InvalidSeed("explicit focus list shorter than depth");

  SequencePair s;
  s.policy = policy;
  s.c = {c, c1};
  s.a = {kInf};
  double cap = c;  // focus cap used by the constant-fraction policy
  for (int i = 1; i <= N; ++i) {
    const double cp = s.c[i - 1];
    const double ci = s.c[i];
    double ai = 0.0;
    switch (policy.kind) {
      case PolicyKind::ThinLimit:
        ai = 0.0;
        break;
      case PolicyKind::ConstantFraction: {
        double u = cap;
        const double den = cp - 2.0 * ci;
        if (den > 0.0) u = std::min(u, ci * ci / den);
        ai = policy.gamma * u;
        cap = ai;
        break;
      }
      case PolicyKind::Explicit:
        ai = policy.explicit_a[i - 1];
        break;
    }
    const std::string bad = check_step(i, s.a[i - 1], ai, cp, ci, policy.kind == PolicyKind::ThinLimit);
    if (!bad.empty()) throw ConstraintViolation(bad);
    s.a.push_back(ai);
    if (i < N) {
      const double cn = next_abscissa(cp, ci, ai);
      if (!(cn > 0.0 && cn < ci))
        throw ConstraintViolation("c_" + std::to_string(i + 1) + " = " + fmt(cn) + " is not in (0, c_" +
                                  std::to_string(i) + ")");
      s.c.push_back(cn);
    }
  }
  return s;
}

SequenceAudit audit_sequences(const SequencePair& seq) {
  SequenceAudit r;
  auto fail = [&](std::string m) {
    if (r.ok) r.first_failure = std::move(m);
    r.ok = false;
  };
  const int N = seq.depth();
  const bool thin = seq.policy.kind == PolicyKind::ThinLimit;
  if (static_cast<int>(seq.a.size()) != N + 1) fail("focus list length does not match depth");
  for (int i = 0; i <= N; ++i) {
    if (!(seq.c[i] > 0.0)) fail("c_" + std::to_string(i) + " is not positive");
    if (i > 0 && !(seq.c[i] < seq.c[i - 1])) fail("c is not strictly decreasing at " + std::to_string(i));
  }
  for (int i = 1; i <= N && i < static_cast<int>(seq.a.size()); ++i) {
    const std::string bad = check_step(i, seq.a[i - 1], seq.a[i], seq.c[i - 1], seq.c[i], thin);
    if (!bad.empty()) fail(bad);
    if (i < N && next_abscissa(seq.c[i - 1], seq.c[i], seq.a[i]) != seq.c[i + 1])
      fail("recurrence fails for c_" + std::to_string(i + 1));
  }
  return r;
}

}  // namespace invis

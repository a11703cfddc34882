#include <cmath>
#include <string>

#include "doctest.h"
#include "invis/errors.hpp"
#include "invis/rng.hpp"
#include "invis/sequences.hpp"

using namespace invis;

TEST_CASE("thin limit halves the abscissas") {
  const auto s = generate_sequences(1.0, 0.5, SequencePolicy::thin_limit(), 12);
  REQUIRE(s.depth() == 12);
  for (int k = 0; k <= 12; ++k) CHECK(s.c[k] == std::ldexp(1.0, -k));
  for (int k = 1; k <= 12; ++k) CHECK(s.a[k] == 0.0);
  CHECK(std::isinf(s.a[0]));
  CHECK(audit_sequences(s).ok);
}

TEST_CASE("explicit focus list") {
  const auto s = generate_sequences(1.0, 0.5, SequencePolicy::explicit_list({0.2, 0.1}), 2);
  CHECK(s.c[2] == doctest::Approx(0.2083333333333333));
  CHECK(s.a[1] == 0.2);
  CHECK(s.a[2] == 0.1);
  // With c_0 - 2 c_1 = 0 the second inequality holds for any positive a_1.
  CHECK_NOTHROW(generate_sequences(1.0, 0.5, SequencePolicy::explicit_list({0.6}), 1));
}

TEST_CASE("invalid seeds") {
  CHECK_THROWS_AS(generate_sequences(1.0, 0.0, SequencePolicy::thin_limit(), 3), InvalidSeed);
  CHECK_THROWS_AS(generate_sequences(1.0, 1.0, SequencePolicy::thin_limit(), 3), InvalidSeed);
  CHECK_THROWS_AS(generate_sequences(1.0, 1.5, SequencePolicy::constant_fraction(), 3), InvalidSeed);
  CHECK_THROWS_AS(generate_sequences(-1.0, 0.5, SequencePolicy::constant_fraction(), 3), InvalidSeed);
  CHECK_THROWS_AS(generate_sequences(1.0, 0.5, SequencePolicy::constant_fraction(), 0), InvalidSeed);
  CHECK_THROWS_AS(generate_sequences(1.0, 0.5, SequencePolicy::constant_fraction(1.0), 3), InvalidSeed);
  CHECK_THROWS_AS(generate_sequences(1.0, 0.5, SequencePolicy::explicit_list({0.2}), 2), InvalidSeed);
}

TEST_CASE("constraint violations name the broken inequality") {
  try {
    generate_sequences(1.0, 0.5, SequencePolicy::explicit_list({0.2, 0.3}), 2);
    FAIL("expected ConstraintViolation");
  } catch (const ConstraintViolation& e) {
    CHECK(std::string(e.what()).find("a_i < a_{i-1}") != std::string::npos);
  }
  // c_0 - 2 c_1 = 0.4, so a_1 must stay below 0.09 / 0.4 = 0.225.
  try {
    generate_sequences(1.0, 0.3, SequencePolicy::explicit_list({0.3}), 1);
    FAIL("expected ConstraintViolation");
  } catch (const ConstraintViolation& e) {
    CHECK(std::string(e.what()).find("a_i*(c_{i-1} - 2*c_i) < c_i^2") != std::string::npos);
  }
  CHECK_THROWS_AS(generate_sequences(1.0, 0.5, SequencePolicy::explicit_list({-0.1}), 1), ConstraintViolation);
}

TEST_CASE("constant fraction picks gamma times the bound") {
  const auto s = generate_sequences(1.0, 0.3, SequencePolicy::constant_fraction(0.5), 2);
  CHECK(s.a[1] == doctest::Approx(0.5 * 0.225));
  const double c2 = next_abscissa(1.0, 0.3, s.a[1]);
  CHECK(s.c[2] == c2);
  CHECK(c2 < 0.3);
}

TEST_CASE("recurrence") {
  CHECK(next_abscissa(1.0, 0.5, 0.0) == 0.25);
  CHECK(next_abscissa(1.0, 0.5, 0.2) == doctest::Approx(0.49 / 1.2 - 0.2));
}

TEST_CASE("generated sequences pass the audit") {
  for (std::uint64_t i = 0; i < 300; ++i) {
    const double c = 0.1 + 10.0 * uniform01(21, i, 0);
    const double c1 = c * (0.05 + 0.9 * uniform01(21, i, 1));
    const double g = 0.05 + 0.9 * uniform01(21, i, 2);
    const int N = 1 + static_cast<int>(8 * uniform01(21, i, 3));
    SequencePair s;
    try {
      s = generate_sequences(c, c1, SequencePolicy::constant_fraction(g), N);
    } catch (const ConstraintViolation&) {
      continue;  // an honest rejection is fine; a silent bad sequence is not
    }
    const auto a = audit_sequences(s);
    CHECK_MESSAGE(a.ok, a.first_failure);
    for (int k = 1; k <= N; ++k) {
      CHECK(s.c[k] < s.c[k - 1]);
      CHECK(s.a[k] > 0.0);
      CHECK(s.a[k] < s.a[k - 1]);
    }
  }
}

TEST_CASE("audit catches tampering") {
  auto s = generate_sequences(1.0, 0.5, SequencePolicy::constant_fraction(0.5), 4);
  s.c[3] *= 1.0 + 1e-12;
  CHECK_FALSE(audit_sequences(s).ok);
  s = generate_sequences(1.0, 0.5, SequencePolicy::constant_fraction(0.5), 4);
  s.a[2] = s.a[1];
  CHECK_FALSE(audit_sequences(s).ok);
}

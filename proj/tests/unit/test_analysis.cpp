#include <doctest.h>

#include <cmath>

#include "derham/analysis.hpp"
#include "derham/errors.hpp"
#include "derham/presets.hpp"
#include "derham/solution.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace derham;

namespace {

Scalar q(long long n, long long d = 1) { return Scalar::ratio(n, d); }

const double kLog2 = std::log(2.0);

DeRhamSystem ac_family(const Scalar& c0) {
  return validate({q(1, 2), 0, c0, 1},
                  {Scalar(4) * c0 + Scalar(1), 1, Scalar(2) * c0, Scalar(2) * (Scalar(1) + c0)});
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("dimension bounds of the i.i.d. family") {
  for (auto [n, d] : {std::pair{1, 4}, {1, 3}, {2, 3}, {1, 2}}) {
    const DimensionBounds b = dimension_bounds(presets::lebesgue(q(n, d)));
    const double s = oracle::binary_entropy(double(n) / d);
    CHECK(b.theta1 == doctest::Approx(s).epsilon(1e-14));
    CHECK(b.theta2 == doctest::Approx(s).epsilon(1e-14));
    CHECK(std::abs(b.dim_upper - s / kLog2) < 1e-12);
    CHECK(std::abs(b.dim_lower - s / kLog2) < 1e-12);
  }
}

TEST_CASE("dimension bounds of the walk family at u = 1/2") {
  const DeRhamSystem sys = presets::walk(Scalar::approx(0.5));
  const double x = oracle::walk_x(0.5);
  const DimensionBounds b = dimension_bounds(sys);
  const double peak = sys.gamma().to_double() - 2;
  CHECK((peak < sys.alpha().to_double() || peak > sys.beta().to_double()));
  CHECK(std::abs(b.dim_upper - oracle::binary_entropy(x) / kLog2) < 1e-8);
  CHECK(std::abs(b.dim_lower - oracle::binary_entropy(2 * x / (1 + x)) / kLog2) < 1e-8);
}

TEST_CASE("closed-form extrema match a grid search") {
  CounterRng rng(51);
  std::vector<DeRhamSystem> systems{presets::walk(Scalar::approx(0.5)), presets::walk(1),
                                    presets::walk(Scalar::approx(1.5))};
  for (int i = 0; i < 5; ++i) systems.push_back(testing::random_valid_system(rng));
  for (const auto& sys : systems) {
    const DimensionBounds b = dimension_bounds(sys);
    const auto grid = oracle::entropy_grid(sys.alpha().to_double(), sys.beta().to_double(),
                                           sys.gamma().to_double(), 1000000);
    CHECK(std::abs(b.theta1 - grid.max) < 1e-8);
    CHECK(std::abs(b.theta2 - grid.min) < 1e-8);
  }
}

TEST_CASE("dimension bound invariants on random systems") {
  CounterRng rng(52);
  for (int i = 0; i < 300; ++i) {
    const DeRhamSystem sys = testing::random_valid_system(rng);
    const DimensionBounds b = dimension_bounds(sys);
    CHECK(0.0 <= b.theta2);
    CHECK(b.theta2 <= b.theta1);
    CHECK(b.theta1 <= kLog2);
    CHECK(b.dim_upper <= 1.0);
    const Scalar peak = sys.gamma() - Scalar(2);
    const bool inside = sys.alpha() <= peak && peak <= sys.beta();
    CHECK(inside == (b.theta1 == kLog2));
    CHECK(sys.alpha() <= b.argmax_location);
    CHECK(b.argmax_location <= sys.beta());
  }
}

TEST_CASE("classification of the presets") {
  for (auto [n, d] : {std::pair{1, 3}, {1, 4}, {2, 3}, {1, 5}}) {
    const ClassificationReport r = classify(presets::lebesgue(q(n, d)));
    CHECK_FALSE(r.absolutely_continuous());
    CHECK_FALSE(r.condition_i);
    CHECK_FALSE(r.condition_ii);
    CHECK(r.exactness == Mode::exact);
  }
  const ClassificationReport half = classify(presets::lebesgue(q(1, 2)));
  CHECK(half.absolutely_continuous());
  CHECK(std::get<AbsolutelyContinuous>(half.verdict).c0norm == Scalar(0));

  const ClassificationReport walk = classify(presets::walk(1));
  REQUIRE(walk.absolutely_continuous());
  CHECK(std::get<AbsolutelyContinuous>(walk.verdict).c0norm == q(-1, 4));

  for (double u : {0.25, 0.5, 0.9, 1.1, 1.5, 1.7}) {
    const ClassificationReport r = classify(presets::walk(Scalar::approx(u)));
    CHECK_FALSE(r.absolutely_continuous());
    CHECK(r.exactness == Mode::approx);
  }
  const ClassificationReport exact_walk = classify(presets::walk(q(3, 7)));
  CHECK(exact_walk.exactness == Mode::exact);
  CHECK_FALSE(exact_walk.absolutely_continuous());
}

TEST_CASE("the i.i.d. conditions reduce to p = 1/2") {
  CounterRng rng(53);
  for (int i = 0; i < 200; ++i) {
    const Rational p = testing::random_open(rng, Rational(0), Rational(1), 50);
    const DeRhamSystem sys = presets::lebesgue(Scalar(p));
    const bool expected = (1 - 2 * p) * (1 - p) == 0;
    CHECK(condition_i(sys) == expected);
    CHECK(condition_ii(sys) == ((1 - p) * (1 - 2 * p) == 0));
  }
}

TEST_CASE("condition (i) holds exactly when gamma - 2 is fixed by the transposed map") {
  CounterRng rng(54);
  for (int i = 0; i < 300; ++i) {
    const DeRhamSystem sys = testing::random_valid_system(rng, 8);
    const Scalar peak = sys.gamma() - Scalar(2);
    CHECK(condition_i(sys) == (phi(sys.transposed(0), peak) == peak));
  }
  for (int i = 0; i < 50; ++i) {
    const DeRhamSystem sys = ac_family(Scalar(testing::random_open(rng, Rational(-1, 4), Rational(7, 10))));
    CHECK(condition_i(sys));
    CHECK(condition_ii(sys));
  }
}

TEST_CASE("verdicts are invariant under positive rescaling") {
  CounterRng rng(55);
  std::vector<DeRhamSystem> systems{presets::walk(1), presets::lebesgue(q(1, 2)), presets::lebesgue(q(1, 3))};
  for (int i = 0; i < 100; ++i) systems.push_back(testing::random_valid_system(rng, 8));
  for (int i = 0; i < 30; ++i)
    systems.push_back(ac_family(Scalar(testing::random_open(rng, Rational(-1, 4), Rational(7, 10)))));
  for (const auto& sys : systems) {
    const Scalar k = testing::random_scalar(rng, 0, 100), m = testing::random_scalar(rng, 0, 100);
    const DeRhamSystem scaled = validate(sys.a0().scaled(k), sys.a1().scaled(m));
    const ClassificationReport a = classify(sys), b = classify(scaled);
    CHECK(a.condition_i == b.condition_i);
    CHECK(a.condition_ii == b.condition_ii);
    CHECK(a.absolutely_continuous() == b.absolutely_continuous());
    // The approximate decision scales the same way.
    const DeRhamSystem big = validate(sys.a0().scaled(Scalar(1000000)), sys.a1()).to_mode(Mode::approx);
    CHECK(classify(big).absolutely_continuous() == a.absolutely_continuous());
  }
}

TEST_CASE("absolute continuity iff both conditions") {
  CounterRng rng(56);
  for (int i = 0; i < 300; ++i) {
    const DeRhamSystem sys = testing::random_valid_system(rng, 6);
    const ClassificationReport r = classify(sys);
    CHECK(r.absolutely_continuous() == (r.condition_i && r.condition_ii));
    if (const auto* s = std::get_if<Singular>(&r.verdict)) {
      CHECK(s->defect_bound.has_value() == !r.condition_i);
      if (s->defect_bound) CHECK(*s->defect_bound < 1.0);
    }
  }
}

TEST_CASE("eps0 for p = 1/3") {
  const DeRhamSystem sys = presets::lebesgue(q(1, 3));
  const Scalar eps = epsilon0(sys);
  CHECK(eps == Scalar(Rational((1 << 20) - 1, 1 << 21)));
  const Scalar peak = sys.gamma() - Scalar(2);
  CHECK(abs(phi(sys.transposed(0), peak + eps) - peak) > eps);
  CHECK(abs(phi(sys.transposed(0), peak - eps) - peak) > eps);
  CHECK(eps < Scalar(2) * (sys.gamma() - Scalar(1)));
}

TEST_CASE("eps0 is certified on random systems") {
  CounterRng rng(57);
  for (int i = 0; i < 200; ++i) {
    const DeRhamSystem sys = testing::random_system_failing_i(rng);
    const Scalar eps = epsilon0(sys);
    CHECK(eps > Scalar(0));
    CHECK(eps < Scalar(2) * (sys.gamma() - Scalar(1)));
    const Scalar peak = sys.gamma() - Scalar(2);
    // Sample the interval densely, not just its ends.
    for (int j = 0; j <= 16; ++j) {
      const Scalar z = peak - eps + Scalar(2) * eps * Scalar::ratio(j, 16);
      CHECK(abs(phi(sys.transposed(0), z) - peak) > eps);
    }
  }
}

TEST_CASE("defect bound requires condition (i) to fail") {
  CHECK_THROWS_AS(epsilon0(presets::walk(1)), ConditionHoldsError);
  CHECK_THROWS_AS(singular_dim_upper_bound(presets::walk(1)), ConditionHoldsError);
  CHECK_THROWS_AS(singular_dim_upper_bound(presets::lebesgue(q(1, 2))), ConditionHoldsError);
  const DeRhamSystem sys = presets::lebesgue(q(1, 3));
  CHECK_THROWS_AS(singular_dim_upper_bound(sys, Scalar(0)), PreconditionError);
  CHECK_THROWS_AS(singular_dim_upper_bound(sys, Scalar(5)), PreconditionError);
  // Admissible radius, but it does not separate.
  CHECK_THROWS_AS(singular_dim_upper_bound(sys, q(9, 10)), PreconditionError);
}

TEST_CASE("defect bound for p = 1/3") {
  const DeRhamSystem sys = presets::lebesgue(q(1, 3));
  const double bound = singular_dim_upper_bound(sys);
  const double sharp = oracle::binary_entropy(1.0 / 3) / kLog2;
  CHECK(bound < 1.0);
  CHECK(bound >= sharp);
  // e0 = max(s(p0(1 +- eps)), ...) with p0(x) = (x + 1)/(x + 3).
  const double eps = epsilon0(sys).to_double();
  const double e0 = std::max(oracle::binary_entropy((2 + eps) / (4 + eps)),
                             oracle::binary_entropy((2 - eps) / (4 - eps)));
  const double expected = (kLog2 - (kLog2 - e0) * (1.0 / 3) / 2) / kLog2;
  CHECK(bound == doctest::Approx(expected).epsilon(1e-14));
  const double half = singular_dim_upper_bound(sys, epsilon0(sys) / Scalar(2));
  CHECK(half < 1.0);
  CHECK(half >= sharp);
}

TEST_CASE("normal form") {
  const NormalForm walk = verify_normal_form(presets::walk(1));
  CHECK(walk.a0 == MoebiusMatrix{q(1, 2), 0, q(-1, 4), 1});
  CHECK(walk.a1 == MoebiusMatrix{0, 1, q(-1, 2), q(3, 2)});
  CHECK(walk.c0 == q(-1, 4));

  const NormalForm half = verify_normal_form(presets::lebesgue(q(1, 2)));
  CHECK(half.a0 == MoebiusMatrix{q(1, 2), 0, 0, 1});
  CHECK(half.a1 == MoebiusMatrix{1, 1, 0, 2});

  CHECK_THROWS_AS(verify_normal_form(presets::lebesgue(q(1, 3))), PreconditionError);
  CHECK_THROWS_AS(detail::check_normal_form({q(1, 3), 0, 0, 1}, {1, 1, 0, 2}, Mode::exact), FormMismatch);
  CHECK_THROWS_AS(detail::check_normal_form({q(1, 2), 0, 0, 1}, {1, 1, 0, 3}, Mode::exact), FormMismatch);
  CHECK_NOTHROW(detail::check_normal_form(MoebiusMatrix{q(1, 2), 0, 0, 1}.to_mode(Mode::approx),
                                          MoebiusMatrix{Scalar::approx(1 + 1e-12), 1, 0, 2}.to_mode(Mode::approx),
                                          Mode::approx));

  CounterRng rng(58);
  for (int i = 0; i < 50; ++i) {
    const Scalar c0(testing::random_open(rng, Rational(-1, 4), Rational(7, 10)));
    const DeRhamSystem sys = ac_family(c0);
    const DeRhamSystem scaled = validate(sys.a0().scaled(testing::random_scalar(rng, 0, 9)),
                                        sys.a1().scaled(testing::random_scalar(rng, 0, 9)));
    CHECK(verify_normal_form(scaled).c0 == c0);
  }
}

}  // TEST_SUITE

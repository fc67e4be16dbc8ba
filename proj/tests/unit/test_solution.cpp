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

}  // namespace

TEST_SUITE("solution") {

TEST_CASE("dyadic addresses") {
  const DyadicAddress a{0, 1, 1};
  CHECK(a.size() == 3);
  CHECK(a.index() == 3);
  CHECK(a.left() == q(3, 8));
  CHECK(a.right() == q(1, 2));
  CHECK(a.to_string() == "011");
  CHECK(a.child(0) == DyadicAddress{0, 1, 1, 0});
  CHECK(a.shifted() == DyadicAddress{1, 1});
  CHECK(a.prefixed(1) == DyadicAddress{1, 0, 1, 1});
  CHECK(DyadicAddress::from_index(3, 3) == a);
  CHECK(DyadicAddress::of_point(q(3, 8), 3) == a);
  CHECK(DyadicAddress::of_point(q(3, 8), 5) == DyadicAddress{0, 1, 1, 0, 0});
  CHECK(DyadicAddress::of_point(q(1, 3), 4) == DyadicAddress{0, 1, 0, 1});
  CHECK(DyadicAddress::of_point(Scalar::approx(0.75), 2) == DyadicAddress{1, 1});
  CHECK(DyadicAddress().left() == Scalar(0));
  CHECK(DyadicAddress().right() == Scalar(1));
  CHECK_THROWS(DyadicAddress{0, 2});
  CHECK_THROWS(DyadicAddress::of_point(Scalar(1), 3));
}

TEST_CASE("digits follow the floor formula") {
  CounterRng rng(31);
  for (int i = 0; i < 200; ++i) {
    const Scalar x(testing::random_open(rng, Rational(0), Rational(1), 1000));
    const DyadicAddress a = DyadicAddress::of_point(x, 20);
    Rational p = 1;
    for (unsigned n = 1; n <= 20; ++n) {
      p *= 2;
      auto floor_of = [](const Rational& r) {
        return Integer(boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r));
      };
      const Integer digit = floor_of(p * x.rational()) - 2 * floor_of(p / 2 * x.rational());
      CHECK(digit == a[n - 1]);
    }
    CHECK(a.left() <= x);
    CHECK(x < a.right());
  }
}

TEST_CASE("eval_dyadic on known addresses") {
  const DeRhamSystem sys = presets::lebesgue(q(1, 3));
  const ValueEnclosure e = eval_dyadic(sys, DyadicAddress{0, 1});
  CHECK(e.lower == q(1, 9));
  CHECK(e.upper == q(1, 3));
  const ValueEnclosure root = eval_dyadic(sys, DyadicAddress{});
  CHECK(root.lower == Scalar(0));
  CHECK(root.upper == Scalar(1));
  const ValueEnclosure right = eval_dyadic(sys, DyadicAddress{1});
  CHECK(right.lower == sys.a1().b / sys.a1().d);
  CHECK(right.upper == Scalar(1));
}

TEST_CASE("eval_dyadic matches the i.i.d. digit distribution function") {
  for (const Rational& p : {Rational(1, 3), Rational(1, 4), Rational(2, 3)}) {
    const DeRhamSystem sys = presets::lebesgue(Scalar(p));
    const unsigned n = 10;
    const auto cdf = oracle::bernoulli_cdf_grid(p, n);
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
      const ValueEnclosure e = eval_dyadic(sys, DyadicAddress::from_index(k, n));
      CHECK(e.lower.rational() == cdf[k]);
      CHECK(e.upper.rational() == cdf[k + 1]);
    }
  }
}

TEST_CASE("enclosures are increasing and endpoint-consistent to depth 12") {
  CounterRng rng(32);
  std::vector<DeRhamSystem> systems{presets::lebesgue(q(1, 3)), presets::walk(1),
                                    testing::random_valid_system(rng)};
  for (const auto& sys : systems) {
    const unsigned n = 12;
    Scalar previous_upper(0);
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
      const ValueEnclosure e = eval_dyadic(sys, DyadicAddress::from_index(k, n));
      CHECK(e.lower == previous_upper);
      CHECK(e.lower < e.upper);
      previous_upper = e.upper;
    }
    CHECK(previous_upper == Scalar(1));
  }
}

TEST_CASE("f at special points") {
  CounterRng rng(33);
  for (int i = 0; i < 50; ++i) {
    const DeRhamSystem sys = testing::random_valid_system(rng);
    CHECK(eval(sys, 0, 1e-9) == Scalar(0));
    CHECK(eval(sys, 1, 1e-9) == Scalar(1));
    CHECK(eval(sys, q(1, 2), 0.0) == sys.a1().b / sys.a1().d);
  }
  CHECK(eval(presets::lebesgue(q(1, 3)), q(1, 2), 0.0) == q(1, 3));
}

TEST_CASE("eval at u = 1 matches 2x/(x+1)") {
  const DeRhamSystem sys = presets::walk(1);
  CHECK(std::abs(eval(sys, q(1, 2), 1e-12).to_double() - 2.0 / 3.0) <= 1e-12);
  CounterRng rng(34);
  for (int i = 0; i < 200; ++i) {
    const double x = rng.uniform();
    const double v = eval(sys.to_mode(Mode::approx), Scalar::approx(x), 1e-12).to_double();
    CHECK(std::abs(v - oracle::walk1_f(x)) <= 2e-12);
  }
  // non-dyadic exact input
  const ValueEnclosure enc = eval_enclosure(sys, q(1, 3), 1e-10);
  CHECK(enc.lower.to_double() <= 0.5);
  CHECK(enc.upper.to_double() >= 0.5);
  CHECK(enc.width().to_double() <= 2e-10);
}

TEST_CASE("eval rejects bad input and honors the depth cap") {
  const DeRhamSystem sys = presets::walk(1);
  CHECK_THROWS_AS(eval(sys, q(3, 2), 1e-9), DomainError);
  CHECK_THROWS_AS(eval(sys, q(-1, 2), 1e-9), DomainError);
  CHECK_THROWS_AS(eval(sys, q(1, 3), 1e-9, 5), NonConvergence);
}

TEST_CASE("enclosure width shrinks geometrically") {
  for (const auto& sys : {presets::lebesgue(q(1, 3)), presets::lebesgue(q(1, 2)), presets::walk(1),
                          presets::walk(Scalar::approx(0.5)), presets::walk(Scalar::approx(1.5))}) {
    CounterRng rng(35);
    for (int i = 0; i < 20; ++i) {
      const DyadicAddress addr(testing::random_bits(rng, 64));
      const DeRhamSystem approx = sys.to_mode(Mode::approx);
      CHECK(eval_dyadic(approx, addr).width().to_double() < 1e-6);
    }
  }
}

TEST_CASE("functional equation residual vanishes at dyadic points") {
  CounterRng rng(36);
  const DeRhamSystem random_sys = testing::random_valid_system(rng);
  for (const auto& sys : {presets::lebesgue(q(1, 3)), presets::walk(1), random_sys}) {
    for (std::uint64_t k = 0; k <= 1024; ++k)
      CHECK(functional_equation_residual(sys, Scalar(Rational(k, 1024))).is_zero());
  }
  const DeRhamSystem approx = presets::walk(1).to_mode(Mode::approx);
  for (std::uint64_t k = 0; k <= 1024; ++k)
    CHECK(functional_equation_residual(approx, Scalar::approx(k / 1024.0)).to_double() < 1e-12);
  CHECK_THROWS_AS(functional_equation_residual(presets::walk(1), q(1, 3)), PreconditionError);
}

TEST_CASE("inverse_eval") {
  const DeRhamSystem sys = presets::walk(1);
  CHECK(inverse_eval(sys, 0, 1e-9) == Scalar(0));
  CHECK(inverse_eval(sys, 1, 1e-9) == Scalar(1));
  CHECK(inverse_eval(sys, q(2, 3), 1e-10) == q(1, 2));  // exact node value
  CHECK(std::abs(inverse_eval(sys, q(7, 10), 1e-10).to_double() - oracle::walk1_g(0.7)) <= 1e-10);

  CounterRng rng(37);
  const DeRhamSystem random_sys = testing::random_valid_system(rng);
  for (const auto& s : {sys, random_sys, presets::walk(Scalar::approx(0.5))}) {
    for (int i = 0; i < 1000; ++i) {
      const Scalar y = Scalar::approx(rng.uniform());
      const double x = inverse_eval(s, y, 1e-10).to_double();
      // f is only Hoelder continuous, so bracket y instead of comparing f(x) with y.
      const double below = eval(s, Scalar::approx(std::max(0.0, x - 2e-10)), 1e-14).to_double();
      const double above = eval(s, Scalar::approx(std::min(1.0, x + 2e-10)), 1e-14).to_double();
      CHECK(below <= y.to_double() + 1e-15);
      CHECK(above >= y.to_double() - 1e-15);
    }
  }
  CHECK_THROWS_AS(inverse_eval(sys, q(2), 1e-9), DomainError);
}

TEST_CASE("closed form in the absolutely continuous case") {
  const auto cf = closed_form_solution(presets::walk(1));
  REQUIRE(cf.has_value());
  CHECK(cf->c0 == q(-1, 4));
  CHECK(cf->value(q(1, 2)) == q(2, 3));
  CHECK(cf->density(0) == Scalar(2));
  CHECK(cf->inverse(q(2, 3)) == q(1, 2));

  const auto flat = closed_form_solution(presets::lebesgue(q(1, 2)));
  REQUIRE(flat.has_value());
  CHECK(flat->c0 == Scalar(0));
  CHECK(flat->value(q(3, 7)) == q(3, 7));

  CHECK_FALSE(closed_form_solution(presets::lebesgue(q(1, 3))).has_value());

  const double mass = oracle::integrate(
      [&](double x) { return cf->density(Scalar::approx(x)).to_double(); }, 0.0, 1.0);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  for (int k = 0; k <= 100; ++k) {
    const double x = k / 100.0;
    CHECK(cf->density(Scalar::approx(x)).to_double() == doctest::Approx(oracle::walk1_density(x)).epsilon(1e-14));
  }
}

TEST_CASE("closed form equals eval exactly at dyadic points") {
  const DeRhamSystem sys = presets::walk(1);
  const auto cf = closed_form_solution(sys);
  REQUIRE(cf);
  for (std::uint64_t k = 0; k < 4096; ++k) {
    const Scalar x(Rational(k, 4096));
    CHECK(eval_dyadic(sys, DyadicAddress::from_index(k, 12)).lower == cf->value(x));
    CHECK(cf->value(x).rational() == oracle::walk1_f(x.rational()));
  }
}

TEST_CASE("absolutely continuous systems built from the family, rescaled") {
  CounterRng rng(38);
  for (int i = 0; i < 50; ++i) {
    // The family is admissible for 1/sqrt(2) - 1 < c0 < 1/sqrt(2).
    const Scalar c0 = Scalar(testing::random_open(rng, Rational(-1, 4), Rational(7, 10), 32));
    const MoebiusMatrix a0{q(1, 2), 0, c0, 1};
    const MoebiusMatrix a1{Scalar(4) * c0 + Scalar(1), 1, Scalar(2) * c0, Scalar(2) * (Scalar(1) + c0)};
    const DeRhamSystem sys = validate(a0.scaled(testing::random_scalar(rng, 0, 5)),
                                      a1.scaled(testing::random_scalar(rng, 0, 5)));
    const auto cf = closed_form_solution(sys);
    REQUIRE(cf);
    for (std::uint64_t k = 0; k < 256; k += 7) {
      const Scalar x(Rational(k, 256));
      CHECK(eval(sys, x, 0.0) == cf->value(x));
    }
  }
}

}  // TEST_SUITE

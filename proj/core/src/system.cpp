#include "derham/system.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "derham/errors.hpp"

namespace derham {

namespace {

constexpr double kFixedPointResidualTol = 1e-10;

bool equal_within(const Scalar& a, const Scalar& b, Mode mode) {
  return mode == Mode::exact ? a == b : near(a, b, DeRhamSystem::kApproxEqualityTol);
}

// Evaluates Phi(m; z) but reports a vanishing denominator as a violation
// instead of throwing, so every condition can be collected.
bool try_phi(const MoebiusMatrix& m, const Scalar& z, Scalar& out) {
  try {
    out = phi(m, z);
    return true;
  } catch (const PoleError&) {
    return false;
  }
}

}  // namespace

DeRhamSystem DeRhamSystem::to_mode(Mode mode) const {
  return validate(a0_.to_mode(mode), a1_.to_mode(mode));
}

DeRhamSystem validate(const MoebiusMatrix& raw0, const MoebiusMatrix& raw1) {
  const Mode mode = combine(raw0.mode(), raw1.mode());
  const MoebiusMatrix a0 = raw0.to_mode(mode);
  const MoebiusMatrix a1 = raw1.to_mode(mode);
  std::vector<Violation> violations;
  const Scalar zero(0), one(1);

  // (A1): 0 = b0 < Phi(A0; 1) = b1/d1 < Phi(A1; 1) = 1.
  if (!equal_within(a0.b, zero, mode))
    violations.push_back({"A1", "b0 = " + a0.b.to_string() + " but must equal 0"});
  Scalar f_half0, f_half1, f_one;
  const bool have0 = try_phi(a0, one, f_half0);
  const bool have1 = try_phi(a1, zero, f_half1);
  const bool have_one = try_phi(a1, one, f_one);
  if (!have0) violations.push_back({"A1", "Phi(A0;1) undefined (c0 + d0 = 0)"});
  if (!have1) violations.push_back({"A1", "b1/d1 undefined (d1 = 0)"});
  if (!have_one) violations.push_back({"A1", "Phi(A1;1) undefined (c1 + d1 = 0)"});
  if (have0 && !(f_half0 > zero))
    violations.push_back({"A1", "Phi(A0;1) = " + f_half0.to_string() + " must be > 0"});
  if (have0 && !(f_half0 < one))
    violations.push_back({"A1", "Phi(A0;1) = " + f_half0.to_string() + " must be < 1"});
  if (have0 && have1 && !equal_within(f_half0, f_half1, mode))
    violations.push_back({"A1", "Phi(A0;1) = " + f_half0.to_string() + " differs from b1/d1 = " +
                                    f_half1.to_string()});
  if (have1 && have_one && !(f_half1 < f_one))
    violations.push_back({"A1", "b1/d1 = " + f_half1.to_string() + " must be < Phi(A1;1) = " +
                                    f_one.to_string()});
  if (have_one && !equal_within(f_one, one, mode))
    violations.push_back({"A1", "Phi(A1;1) = " + f_one.to_string() + " must equal 1"});

  const MoebiusMatrix* mats[] = {&a0, &a1};
  for (int i = 0; i < 2; ++i) {
    const MoebiusMatrix& m = *mats[i];
    const std::string tag = std::to_string(i);
    const Scalar det = m.det();
    // (A2)
    if (!(det > zero))
      violations.push_back({"A2", "det A" + tag + " = " + det.to_string() + " must be > 0"});
    // (A3), squared: det < min{d, c + d}^2 with min{d, c + d} > 0.
    const Scalar lo = min(m.d, m.c + m.d);
    if (!(lo > zero)) {
      violations.push_back({"A3", "min{d" + tag + ", c" + tag + "+d" + tag + "} = " + lo.to_string() +
                                      " must be > 0"});
    } else if (!(det < lo * lo)) {
      violations.push_back({"A3", "sqrt(det A" + tag + ") must be < min{d" + tag + ", c" + tag +
                                      "+d" + tag + "}: det = " + det.to_string() +
                                      ", min^2 = " + (lo * lo).to_string()});
    }
  }

  if (!violations.empty()) throw ValidationError(std::move(violations));

  // Consequences of (A1)-(A3); d0 > a0 must hold before c0/(d0 - a0) is formed.
  if (!(a0.d > a0.a && a0.a > zero))
    violations.push_back({"derived", "d0 > a0 > 0 fails"});
  if (!(a1.b + a1.c > zero)) violations.push_back({"derived", "b1 + c1 > 0 fails"});
  if (!violations.empty()) throw ValidationError(std::move(violations));

  DeRhamSystem sys;
  sys.a0_ = a0;
  sys.a1_ = a1;
  sys.t0_ = transpose(a0);
  sys.t1_ = transpose(a1);
  sys.mode_ = mode;
  const Scalar fp0 = a0.c / (a0.d - a0.a);
  const Scalar fp1 = a1.c / a1.b;
  sys.alpha_ = min(zero.to_mode(mode), min(fp0, fp1));
  sys.beta_ = max(zero.to_mode(mode), max(fp0, fp1));
  sys.gamma_ = one / f_half0;

  if (!(sys.alpha_ > Scalar(-1)))
    throw ValidationError({{"derived", "alpha = " + sys.alpha_.to_string() + " must be > -1"}});
  if (!(sys.gamma_ > one))
    throw ValidationError({{"derived", "gamma = " + sys.gamma_.to_string() + " must be > 1"}});
  return sys;
}

Scalar p0(const DeRhamSystem& sys, const Scalar& x) {
  if (!(x > -sys.gamma()))
    throw DomainError("p0 undefined at x = " + x.to_string() + " <= -gamma");
  return (x + Scalar(1)) / (x + sys.gamma());
}

double entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("entropy argument outside [0,1]");
  double s = 0.0;
  if (p > 0.0) s -= p * std::log(p);
  if (p < 1.0) s -= (1.0 - p) * std::log1p(-p);
  return s;
}

Scalar entropy(const Scalar& p) {
  if (p < Scalar(0) || p > Scalar(1))
    throw DomainError("entropy argument " + p.to_string() + " outside [0,1]");
  if (p.is_zero() || p == Scalar(1)) return Scalar::approx(0.0);
  if (!p.is_exact()) return Scalar::approx(entropy(p.to_double()));
  // Exact input: evaluate the logs of p and 1 - p from the rational itself.
  const Scalar q = Scalar(1) - p;
  return Scalar::approx(-(p.to_double() * log(p).to_double()) - q.to_double() * log(q).to_double());
}

FixedPoints fixed_points(const DeRhamSystem& sys) {
  const auto& a0 = sys.a0();
  const auto& a1 = sys.a1();
  FixedPoints fp{a0.c / (a0.d - a0.a), {Scalar(-1).to_mode(sys.mode()), a1.c / a1.b}};

  auto check = [&](const MoebiusMatrix& t, const Scalar& z) {
    const Scalar residual = abs(phi(t, z) - z);
    const bool ok = sys.mode() == Mode::exact ? residual.is_zero()
                                              : residual.to_double() < kFixedPointResidualTol;
    if (!ok)
      throw std::logic_error("fixed point " + z.to_string() + " has residual " +
                             residual.to_string());
  };
  check(sys.transposed(0), fp.transposed0);
  check(sys.transposed(1), fp.transposed1.first);
  check(sys.transposed(1), fp.transposed1.second);
  return fp;
}

}  // namespace derham

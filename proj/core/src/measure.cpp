#include "derham/measure.hpp"

#include <algorithm>
#include <cmath>

#include "derham/errors.hpp"
#include "derham/rng.hpp"
#include "derham/solution.hpp"

namespace derham {

namespace {

constexpr double kContainmentTol = 1e-10;

struct DoubleMap {
  double a, b, c, d;
  double operator()(double t) const { return (a * t + b) / (c * t + d); }
};

DoubleMap as_doubles(const MoebiusMatrix& m) {
  return {m.a.to_double(), m.b.to_double(), m.c.to_double(), m.d.to_double()};
}

// Draws n digits of a mu_f-distributed point and reports each step as
// (state before the draw, drawn digit). Exact systems keep exact states and
// only convert p0(t) to double for the comparison with the uniform variate.
template <typename OnStep>
void drive_path(const DeRhamSystem& sys, std::size_t n, std::uint64_t seed, OnStep&& on_step) {
  CounterRng rng(seed);
  if (sys.mode() == Mode::approx) {
    const DoubleMap maps[2] = {as_doubles(sys.transposed(0)), as_doubles(sys.transposed(1))};
    const double gamma = sys.gamma().to_double();
    const double alpha = sys.alpha().to_double();
    const double beta = sys.beta().to_double();
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double p = (t + 1.0) / (t + gamma);
      const int digit = rng.uniform() < p ? 0 : 1;
      on_step(Scalar::approx(t), digit);
      // The orbit provably stays in [alpha, beta]; clamp rounding excursions.
      t = std::clamp(maps[digit](t), alpha, beta);
    }
    return;
  }
  Scalar t(0);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = p0(sys, t).to_double();
    const int digit = rng.uniform() < p ? 0 : 1;
    on_step(t, digit);
    t = phi(sys.transposed(digit), t);
  }
}

// Running mean, clamped to the range of the terms seen so far (which the
// exact mean cannot leave).
class BoundedMean {
 public:
  void add(double x) {
    ++count_;
    mean_ += (x - mean_) / static_cast<double>(count_);
    lo_ = std::min(lo_, x);
    hi_ = std::max(hi_, x);
    mean_ = std::clamp(mean_, lo_, hi_);
  }
  double value() const { return mean_; }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double lo_ = INFINITY;
  double hi_ = -INFINITY;
};

}  // namespace

Scalar interval_measure(const MoebiusMatrix& w) {
  return (w.a * w.d - w.b * w.c) / (w.d * (w.c + w.d));
}

Scalar interval_measure(const DeRhamSystem& sys, const DyadicAddress& addr) {
  return interval_measure(word(sys, addr));
}

double log_interval_measure(const DeRhamSystem& sys, const DyadicAddress& addr) {
  const double log_det[2] = {log(sys.a0().det()).to_double(), log(sys.a1().det()).to_double()};
  MatrixWord w(sys.mode());
  double sum_log_det = 0.0;
  for (std::size_t i = 0; i < addr.size(); ++i) {
    w.append(sys.matrix(addr[i]));
    sum_log_det += log_det[addr[i]];
  }
  const MoebiusMatrix& m = w.matrix();
  // m = exp(-L) W with L = log_scale, and R is homogeneous of degree 0, so
  // det W / (s(r+s)) = exp(2L) det W / (s_m (r_m + s_m)).
  return sum_log_det + 2.0 * w.log_scale() - log(m.d).to_double() - log(m.c + m.d).to_double();
}

Scalar ratio_state(const DeRhamSystem& sys, const DyadicAddress& addr) {
  Scalar t = Scalar(0).to_mode(sys.mode());
  for (std::size_t i = 0; i < addr.size(); ++i) t = phi(sys.transposed(addr[i]), t);
  return t;
}

Scalar digit_probability(const DeRhamSystem& sys, const Scalar& t, int digit) {
  const bool inside = sys.mode() == Mode::exact && t.is_exact()
                          ? (sys.alpha() <= t && t <= sys.beta())
                          : (t.to_double() >= sys.alpha().to_double() - kContainmentTol &&
                             t.to_double() <= sys.beta().to_double() + kContainmentTol);
  if (!inside)
    throw DomainError("ratio state " + t.to_string() + " outside [alpha, beta] = [" +
                      sys.alpha().to_string() + ", " + sys.beta().to_string() + "]");
  return digit == 0 ? p0(sys, t) : p1(sys, t);
}

void visit_tree(const DeRhamSystem& sys, unsigned max_depth,
                const std::function<void(const MeasureNode&)>& visit) {
  const Mode mode = sys.mode();
  std::function<void(const MeasureNode&)> descend = [&](const MeasureNode& node) {
    visit(node);
    if (node.addr.size() == max_depth) return;
    for (int digit = 0; digit < 2; ++digit) {
      MoebiusMatrix w = mat_mul(node.word, sys.matrix(digit));
      if (mode == Mode::approx) w = renormalize(w);
      MeasureNode child{node.addr.child(digit), interval_measure(w),
                        phi(sys.transposed(digit), node.t), std::move(w)};
      descend(child);
    }
  };
  const MoebiusMatrix root = MoebiusMatrix::identity().to_mode(mode);
  descend(MeasureNode{DyadicAddress{}, Scalar(1).to_mode(mode), Scalar(0).to_mode(mode), root});
}

SamplePath sample_path(const DeRhamSystem& sys, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw PreconditionError("sample_path needs N >= 1");
  SamplePath path;
  path.seed = seed;
  path.digits.reserve(n);
  path.states.reserve(n);
  drive_path(sys, n, seed, [&](const Scalar& t, int digit) {
    path.states.push_back(t);
    path.digits.push_back(static_cast<std::uint8_t>(digit));
  });
  return path;
}

double entropy_rate_estimate(const DeRhamSystem& sys, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw PreconditionError("entropy_rate_estimate needs N >= 1");
  BoundedMean mean;
  drive_path(sys, n, seed, [&](const Scalar& t, int) {
    mean.add(entropy(p0(sys, t)).to_double());
  });
  return mean.value();
}

double entropy_rate_estimate(const DeRhamSystem& sys, const SamplePath& path) {
  if (path.states.empty()) throw PreconditionError("empty sample path");
  BoundedMean mean;
  for (const auto& t : path.states) mean.add(entropy(p0(sys, t)).to_double());
  return mean.value();
}

}  // namespace derham

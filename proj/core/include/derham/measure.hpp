#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "derham/address.hpp"
#include "derham/system.hpp"

namespace derham {

/// State attached to one dyadic interval I_n.
struct MeasureNode {
  DyadicAddress addr;
  Scalar R;            // mu_f(I_n)
  Scalar t;            // ratio state r_n/s_n, in [alpha, beta]
  MoebiusMatrix word;  // A_{i1} ... A_{in} = ((p, q), (r, s))
};

/// R = (ps - qr) / (s(r + s)) = Phi(W; 1) - Phi(W; 0). Invariant under
/// positive rescaling of the word.
Scalar interval_measure(const MoebiusMatrix& word);
Scalar interval_measure(const DeRhamSystem& sys, const DyadicAddress& addr);

/// log mu_f(I_n) from the word formula, kept in the log domain so deep
/// addresses do not underflow: sum log det A_i - log s - log(r + s), with the
/// word's accumulated rescaling added back.
double log_interval_measure(const DeRhamSystem& sys, const DyadicAddress& addr);

/// t_n = r_n/s_n by the recursion t <- Phi(tA_i; t) from t_0 = 0.
Scalar ratio_state(const DeRhamSystem& sys, const DyadicAddress& addr);

/// p0(t) for digit 0 and 1 - p0(t) for digit 1, the conditional probability
/// R_{n+1}/R_n. Throws DomainError if t leaves [alpha, beta] (by more than
/// 1e-10 in approximate mode).
Scalar digit_probability(const DeRhamSystem& sys, const Scalar& t, int digit);

/// Depth-first pre-order walk over every node down to `max_depth`, building
/// words and ratio states incrementally from the parent.
void visit_tree(const DeRhamSystem& sys, unsigned max_depth,
                const std::function<void(const MeasureNode&)>& visit);

/// Digits of a mu_f-distributed point drawn one at a time:
/// digit n+1 is 0 with probability p0(t_n); states t_0 = 0, ..., t_{N-1}.
struct SamplePath {
  std::vector<std::uint8_t> digits;
  std::vector<Scalar> states;
  std::uint64_t seed = 0;
};

SamplePath sample_path(const DeRhamSystem& sys, std::size_t n, std::uint64_t seed);

/// (1/N) sum_{n<N} s(p0(t_n)) along the path sample_path(sys, n, seed) would
/// draw; estimates lim -log(R_N)/N in nats per digit.
double entropy_rate_estimate(const DeRhamSystem& sys, std::size_t n, std::uint64_t seed);

/// Same estimator over an existing path.
double entropy_rate_estimate(const DeRhamSystem& sys, const SamplePath& path);

}  // namespace derham

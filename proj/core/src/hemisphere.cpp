#include "octoverify/hemisphere.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "octoverify/errors.hpp"
#include "octoverify/parallel.hpp"

namespace octoverify {

namespace {

constexpr int kPrimes[8] = {2, 3, 5, 7, 11, 13, 17, 19};

double radical_inverse(std::uint64_t index, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double out = 0.0;
  while (index > 0) {
    out += f * static_cast<double>(index % static_cast<std::uint64_t>(base));
    index /= static_cast<std::uint64_t>(base);
    f *= inv;
  }
  return out;
}

std::size_t coprime_stride(std::size_t n) {
  if (n < 3) return 1;
  std::size_t s = static_cast<std::size_t>(0.6180339887498949 * static_cast<double>(n));
  while (std::gcd(s, n) != 1) ++s;
  return s;
}

}  // namespace

std::vector<Vec8> hemisphere_candidates(std::size_t count, std::uint64_t seed) {
  std::vector<Vec8> out;
  out.reserve(count);
  std::uint64_t index = seed + 1;
  while (out.size() < count) {
    double q[8];
    for (int a = 0; a < 8; ++a) q[a] = radical_inverse(index, kPrimes[a]);
    ++index;
    Vec8 g;
    for (int a = 0; a < 8; a += 2) {
      const double r = std::sqrt(-2.0 * std::log(std::max(q[a], 1e-300)));
      const double t = 2.0 * std::numbers::pi * q[a + 1];
      g[a] = r * std::cos(t);
      g[a + 1] = r * std::sin(t);
    }
    g[0] = 0.0;
    const double n = g.norm();
    if (n < 1e-12) continue;
    out.push_back(g / n);
  }
  return out;
}

HemisphereReport hemisphere_scan(std::span<const Vec8> samples, std::span<const double> weights,
                                 const HemisphereOptions& options) {
  if (samples.size() != weights.size()) throw InvalidArgument("hemisphere_scan: sample/weight count mismatch");
  if (samples.empty()) throw InvalidArgument("hemisphere_scan: no samples");
  HemisphereReport rep;
  rep.samples = samples.size();
  rep.seed = options.seed;
  rep.tol = options.tol;

  double wsum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    rep.mean_vector += weights[i] * samples[i];
    wsum += weights[i];
  }
  rep.mean_vector /= wsum;
  rep.mean_norm = rep.mean_vector.norm();

  std::vector<Vec8> cands;
  std::vector<std::size_t> start;  // index of the first sample each candidate is tested against
  const std::size_t N = samples.size();
  if (rep.mean_norm > 1e-12) {
    cands.push_back(rep.mean_vector / rep.mean_norm);
    start.push_back(0);
  }
  for (std::size_t i = 0; i < N; ++i) {
    const double n = samples[i].norm();
    cands.push_back(samples[i] / n);
    start.push_back(i);
  }
  for (std::size_t i = 0; i < N; ++i) {
    cands.push_back(-samples[i] / samples[i].norm());
    start.push_back(i);
  }
  for (const Vec8& v : hemisphere_candidates(static_cast<std::size_t>(std::max(0, options.candidate_budget)),
                                             options.seed)) {
    cands.push_back(v);
    start.push_back(0);
  }
  rep.candidates = cands.size();

  const std::size_t stride = coprime_stride(N);
  // Upper bounds from a strided subsample order the scan so that a strong
  // margin is found early and most candidates are pruned after a few samples.
  const std::size_t probe = std::min<std::size_t>(N, 64);
  std::vector<double> bound(cands.size());
  parallel_for(cands.size(), options.workers, [&](std::size_t c) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < probe; ++t) m = std::min(m, samples[(t * N) / probe].dot(cands[c]));
    bound[c] = m;
  });
  std::vector<std::size_t> order(cands.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return bound[a] > bound[b]; });

  constexpr double kPruned = -std::numeric_limits<double>::infinity();
  std::vector<double> margin(cands.size(), kPruned);
  std::atomic<double> best{-std::numeric_limits<double>::infinity()};
  parallel_for(order.size(), options.workers, [&](std::size_t r) {
    const std::size_t c = order[r];
    // Pruning is exact: a candidate is dropped only once its margin is known
    // to be strictly below one already achieved, so the maximum and its
    // lowest-index argmax never depend on scheduling.
    if (bound[c] < best.load(std::memory_order_relaxed)) return;
    const Vec8& v = cands[c];
    double m = std::numeric_limits<double>::infinity();
    std::size_t j = start[c];
    for (std::size_t t = 0; t < N; ++t) {
      m = std::min(m, samples[j].dot(v));
      if (m < best.load(std::memory_order_relaxed)) return;
      j += stride;
      if (j >= N) j -= N;
    }
    margin[c] = m;
    double cur = best.load(std::memory_order_relaxed);
    while (m > cur && !best.compare_exchange_weak(cur, m, std::memory_order_relaxed)) {
    }
  });

  std::size_t arg = 0;
  for (std::size_t c = 1; c < cands.size(); ++c) {
    if (margin[c] > margin[arg]) arg = c;
  }
  rep.best_margin = margin[arg];
  rep.best_direction = cands[arg];
  rep.contained = rep.best_margin > options.tol;
  std::ostringstream msg;
  if (rep.contained) {
    msg << "image lies in an open hemisphere (margin " << rep.best_margin << ")";
  } else {
    msg << "no open hemisphere contains the image among " << rep.candidates << " candidate directions";
  }
  rep.verdict = msg.str();
  return rep;
}

HemisphereReport hemisphere_scan(const Chart& chart, const ChartField& gamma, int codim, bool compact,
                                 const HemisphereOptions& options) {
  if (codim == 6) {
    throw RefusedError("hemisphere property requires codimension k <= 5; curves (k = 6) fall outside the hypothesis");
  }
  if (codim < 1 || codim > 6) throw InvalidArgument("hemisphere_scan: codimension must be in [1, 5]");
  if (!compact) throw RefusedError("hemisphere property requires a compact submanifold");
  const std::vector<FieldValue> values = sample(chart, gamma, options.workers);
  const std::vector<double> w = node_weights(chart, options.workers);
  std::vector<Vec8> samples;
  samples.reserve(values.size());
  for (const FieldValue& v : values) samples.push_back(v.head<8>());
  return hemisphere_scan(samples, w, options);
}

double mean_zero_check(const Chart& chart, const ChartField& gamma, int workers) {
  const FieldValue total = integrate(chart, gamma, workers);
  return total.norm() / volume(chart, workers);
}

}  // namespace octoverify

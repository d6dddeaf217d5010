#pragma once

// Monte Carlo moment estimation.
//
// A kernel is a copyable callable `R operator()(RngStream&)` returning one
// statistic (double) or several (std::array<double, K>) per draw. The draw
// budget is split into `workers` contiguous chunks; worker w owns stream
// (seed, stream_base << 32 | w) and its own copy of the kernel, so scratch
// buffers inside the kernel are never shared. Per-worker summaries are
// merged pairwise in worker order.
//
// estimate_serial() runs the workers one after another on the calling
// thread; estimate() runs them as an OpenMP parallel loop. Both produce
// bit-identical summaries for the same configuration.

#include <omp.h>

#include <array>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "ptkl/moment_summary.hpp"
#include "ptkl/rng.hpp"

namespace ptkl {

struct EstimateConfig {
  std::uint64_t draws = 0;
  unsigned workers = 1;
  std::uint64_t seed = 42;
  std::uint32_t stream_base = 0;
};

namespace detail {

template <class R>
struct StatisticArity;

template <>
struct StatisticArity<double> {
  static constexpr std::size_t value = 1;
  static std::array<double, 1> as_array(double x) { return {x}; }
};

template <std::size_t K>
struct StatisticArity<std::array<double, K>> {
  static constexpr std::size_t value = K;
  static const std::array<double, K>& as_array(const std::array<double, K>& x) { return x; }
};

template <class Kernel>
using KernelResult = std::decay_t<std::invoke_result_t<Kernel&, RngStream&>>;

template <class Kernel>
inline constexpr std::size_t kernel_arity = StatisticArity<KernelResult<Kernel>>::value;

inline void validate(const EstimateConfig& cfg) {
  if (cfg.draws < 2) throw std::invalid_argument("estimate: need at least 2 draws");
  if (cfg.workers == 0) throw std::invalid_argument("estimate: need at least one worker");
}

inline std::pair<std::uint64_t, std::uint64_t> worker_range(const EstimateConfig& cfg,
                                                            unsigned w) {
  const std::uint64_t begin = cfg.draws * w / cfg.workers;
  const std::uint64_t end = cfg.draws * (w + 1) / cfg.workers;
  return {begin, end};
}

template <class Kernel, std::size_t K = kernel_arity<Kernel>>
std::array<MomentSummary, K> run_worker(Kernel kernel, const EstimateConfig& cfg, unsigned w) {
  using Arity = StatisticArity<KernelResult<Kernel>>;
  RngStream stream(cfg.seed, (static_cast<std::uint64_t>(cfg.stream_base) << 32) | w);
  std::array<MomentSummary, K> acc{};
  const auto [begin, end] = worker_range(cfg, w);
  for (std::uint64_t i = begin; i < end; ++i) {
    const std::array<double, K> values = Arity::as_array(kernel(stream));
    for (std::size_t k = 0; k < K; ++k) acc[k].add(values[k]);
  }
  return acc;
}

template <std::size_t K>
std::array<MomentSummary, K> reduce(const std::vector<std::array<MomentSummary, K>>& per_worker) {
  std::array<MomentSummary, K> out{};
  std::vector<MomentSummary> column(per_worker.size());
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t w = 0; w < per_worker.size(); ++w) column[w] = per_worker[w][k];
    out[k] = merge_pairwise(column);
  }
  return out;
}

}  // namespace detail

/// Serial reference: workers executed in order on the calling thread.
template <class Kernel, std::size_t K = detail::kernel_arity<Kernel>>
std::array<MomentSummary, K> estimate_many_serial(const Kernel& kernel, const EstimateConfig& cfg) {
  detail::validate(cfg);
  std::vector<std::array<MomentSummary, K>> per_worker(cfg.workers);
  for (unsigned w = 0; w < cfg.workers; ++w) {
    per_worker[w] = detail::run_worker(kernel, cfg, w);
  }
  return detail::reduce(per_worker);
}

/// OpenMP: one loop iteration per worker.
template <class Kernel, std::size_t K = detail::kernel_arity<Kernel>>
std::array<MomentSummary, K> estimate_many(const Kernel& kernel, const EstimateConfig& cfg) {
  detail::validate(cfg);
  std::vector<std::array<MomentSummary, K>> per_worker(cfg.workers);
  std::vector<std::exception_ptr> errors(cfg.workers);
  const int workers = static_cast<int>(cfg.workers);
#pragma omp parallel for num_threads(workers) schedule(static, 1)
  for (int w = 0; w < workers; ++w) {
    try {
      per_worker[w] = detail::run_worker(kernel, cfg, static_cast<unsigned>(w));
    } catch (...) {
      errors[w] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return detail::reduce(per_worker);
}

template <class Kernel>
MomentSummary estimate(const Kernel& kernel, const EstimateConfig& cfg) {
  static_assert(detail::kernel_arity<Kernel> == 1, "use estimate_many for vector statistics");
  return estimate_many(kernel, cfg)[0];
}

template <class Kernel>
MomentSummary estimate_serial(const Kernel& kernel, const EstimateConfig& cfg) {
  static_assert(detail::kernel_arity<Kernel> == 1, "use estimate_many_serial");
  return estimate_many_serial(kernel, cfg)[0];
}

/// Sampler `Draw(RngStream&)` composed with statistic `double(const Draw&)`.
template <class Sampler, class Statistic>
MomentSummary estimate(Sampler sampler, Statistic statistic, const EstimateConfig& cfg) {
  auto kernel = [sampler, statistic](RngStream& stream) mutable -> double {
    return statistic(sampler(stream));
  };
  return estimate(kernel, cfg);
}

}  // namespace ptkl

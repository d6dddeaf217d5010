#pragma once

#include <cstdint>
#include <span>

namespace ptkl {

/// Streaming count / mean / sum of squared deviations (Welford), mergeable
/// across workers with the Chan-Golub-LeVeque update. Infinite values are
/// not folded into the moments; they are counted separately.
class MomentSummary {
 public:
  /// Adds one observation. +/-inf increments inf_count(); NaN throws.
  void add(double x);

  void merge(const MomentSummary& other);
  static MomentSummary merged(MomentSummary a, const MomentSummary& b);

  std::uint64_t count() const { return count_; }
  std::uint64_t inf_count() const { return inf_count_; }
  /// Finite plus infinite observations.
  std::uint64_t total() const { return count_ + inf_count_; }
  double mean() const { return mean_; }
  double m2() const { return m2_; }

  /// m2 / (count - 1); NaN when count < 2.
  double variance() const;
  /// sqrt(variance / count).
  double std_error() const;
  double inf_fraction() const;

 private:
  std::uint64_t count_ = 0;
  std::uint64_t inf_count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Merges in index order as a balanced binary tree: ((0,1),(2,3)),...
MomentSummary merge_pairwise(std::span<const MomentSummary> parts);

}  // namespace ptkl

#include "ptkl/moment_summary.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ptkl {

void MomentSummary::add(double x) {
  if (std::isnan(x)) {
    throw std::domain_error("MomentSummary::add: NaN observation");
  }
  if (std::isinf(x)) {
    ++inf_count_;
    return;
  }
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void MomentSummary::merge(const MomentSummary& other) {
  inf_count_ += other.inf_count_;
  if (other.count_ == 0) return;
  if (count_ == 0) {
    count_ = other.count_;
    mean_ = other.mean_;
    m2_ = other.m2_;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * (nb / n);
  m2_ += other.m2_ + delta * delta * (na * nb / n);
  count_ += other.count_;
}

MomentSummary MomentSummary::merged(MomentSummary a, const MomentSummary& b) {
  a.merge(b);
  return a;
}

double MomentSummary::variance() const {
  if (count_ < 2) return std::numeric_limits<double>::quiet_NaN();
  return m2_ / static_cast<double>(count_ - 1);
}

double MomentSummary::std_error() const {
  return std::sqrt(variance() / static_cast<double>(count_));
}

double MomentSummary::inf_fraction() const {
  if (total() == 0) return 0.0;
  return static_cast<double>(inf_count_) / static_cast<double>(total());
}

MomentSummary merge_pairwise(std::span<const MomentSummary> parts) {
  if (parts.empty()) return {};
  std::vector<MomentSummary> level(parts.begin(), parts.end());
  while (level.size() > 1) {
    std::vector<MomentSummary> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i < level.size(); i += 2) {
      if (i + 1 < level.size()) {
        next.push_back(MomentSummary::merged(level[i], level[i + 1]));
      } else {
        next.push_back(level[i]);
      }
    }
    level = std::move(next);
  }
  return level.front();
}

}  // namespace ptkl

#include "ptkl/kernels.hpp"

#include <algorithm>

#include "ptkl/sampling.hpp"

namespace ptkl {

PolyaTreeKlKernel::PolyaTreeKlKernel(PolyaTreeSpec spec)
    : spec_(spec), draw_(spec.levels()) {}

std::array<double, 2> PolyaTreeKlKernel::operator()(RngStream& stream) {
  sample_tree_into(spec_, stream, draw_);
  return {kl_forward(draw_), kl_reverse(draw_, scratch_)};
}

BayesianBootstrapKlKernel::BayesianBootstrapKlKernel(DiscreteModel model, AlphaSchedule schedule)
    : model_(std::move(model)), log_w_(model_.size()) {
  const double a = schedule(model_.size());
  concentration_.reserve(model_.size());
  for (double pi : model_.p()) concentration_.push_back(a * pi);
}

std::array<double, 2> BayesianBootstrapKlKernel::operator()(RngStream& stream) {
  sample_dirichlet_log(stream, concentration_, log_w_);
  return {kl_forward_discrete_log(model_.p(), log_w_), kl_reverse_discrete_log(model_.p(), log_w_)};
}

FreqBootstrapKlKernel::FreqBootstrapKlKernel(DiscreteModel model) : model_(std::move(model)) {}

std::array<double, 3> FreqBootstrapKlKernel::operator()(RngStream& stream) {
  const auto w = sample_multinomial_weights(stream, static_cast<std::uint32_t>(model_.size()),
                                            model_.p());
  const auto zeros = std::count(w.begin(), w.end(), 0.0);
  return {kl_forward_discrete(model_.p(), w), kl_reverse_discrete(model_.p(), w),
          static_cast<double>(zeros) / static_cast<double>(w.size())};
}

}  // namespace ptkl

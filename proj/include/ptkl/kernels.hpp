#pragma once

// Draw-and-evaluate kernels for the Monte Carlo harness. Each kernel owns
// its scratch buffers; the harness copies one per worker.

#include <array>
#include <vector>

#include "ptkl/bootstrap.hpp"
#include "ptkl/polya_tree.hpp"
#include "ptkl/rng.hpp"

namespace ptkl {

/// One Polya tree draw -> {KL(f0||f), KL(f||f0)}.
class PolyaTreeKlKernel {
 public:
  explicit PolyaTreeKlKernel(PolyaTreeSpec spec);
  std::array<double, 2> operator()(RngStream& stream);

 private:
  PolyaTreeSpec spec_;
  PolyaTreeDraw draw_;
  std::vector<double> scratch_;
};

/// w ~ Dir(alpha_n p) -> {KL(f0||f), KL(f||f0)}, evaluated from log-weights.
class BayesianBootstrapKlKernel {
 public:
  BayesianBootstrapKlKernel(DiscreteModel model, AlphaSchedule schedule);
  std::array<double, 2> operator()(RngStream& stream);

 private:
  DiscreteModel model_;
  std::vector<double> concentration_;
  std::vector<double> log_w_;
};

/// n w ~ Mult(n, p) -> {KL(f0||f) (possibly +inf), KL(f||f0), fraction of
/// zero weights}.
class FreqBootstrapKlKernel {
 public:
  explicit FreqBootstrapKlKernel(DiscreteModel model);
  std::array<double, 3> operator()(RngStream& stream);

 private:
  DiscreteModel model_;
};

}  // namespace ptkl

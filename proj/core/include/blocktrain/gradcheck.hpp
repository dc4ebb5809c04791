#pragma once

#include <functional>
#include <string>
#include <vector>

#include "blocktrain/autodiff.hpp"

namespace blocktrain {

struct GradCheckReport {
  bool pass = false;
  double max_rel_err = 0.0;
  double tol = 0.0;
  std::size_t coords_checked = 0;
  std::string worst;    // parameter/coordinate with the largest error
  std::string failure;  // non-finite diagnostics; empty when clean
};

// Builds a scalar loss from leaves bound to the checked parameters.
using TapeFn64 = std::function<Variable<double>(Tape<double>&, const std::vector<Variable<double>>&)>;

// Central finite differences (f(x+h) - f(x-h)) / 2h against the tape gradient,
// coordinate by coordinate. Relative error divides by max(|analytic|,
// |numeric|, 1e-3) so near-zero gradients compare absolutely.
GradCheckReport grad_check(const TapeFn64& f, std::vector<Tensor<double>> params, double h, double tol,
                           std::vector<std::string> names = {});

struct NamedGradCheck {
  std::string name;
  GradCheckReport report;
};

// Checks every layer kind plus a randomized 3-block decoupled model, 64-bit.
std::vector<NamedGradCheck> run_gradcheck_suite(std::uint64_t seed, double h, double tol);

}  // namespace blocktrain

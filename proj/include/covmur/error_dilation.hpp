#pragma once

// Raising the error of one margin of a joint observable to any value between
// its current error and the largest possible one, without touching the
// other margins: mix J with a copy whose i-th outcome is collapsed.

#include <cstddef>
#include <string>

#include "covmur/metrics.hpp"
#include "covmur/observables.hpp"

namespace covmur {

// J~(w) = sum over w_i of J(..w_i..) when w_i = target, else 0.
Observable collapse_joint(const Observable& joint, std::size_t axis, std::string_view target);

struct DilationOptions {
  double tolerance = 1e-8;
  int max_iterations = 200;
};

struct DilationResult {
  double lambda = 0.0;
  Observable joint;       // (1 - lambda) J + lambda J~
  double achieved = 0.0;  // d_p(E_i, margin_i(joint)), exact evaluator
  double initial = 0.0;   // error at lambda = 0
  double maximum = 0.0;   // error at lambda = 1
  int iterations = 0;
  std::string collapsed_to;
};

/// Finds lambda with |d_p(E_i, margin_i(J_lambda)) - v| <= tol by bisection.
///
/// p = inf: collapses onto the first outcome whose target effect is not full
/// rank, reaching error 1. Finite p: needs a target effect with eigenvalue 1
/// and collapses onto the first other outcome, reaching 2^{1/p}. Throws
/// Unsupported when neither applies or no exact evaluator exists, Range when
/// v lies outside [current, maximum].
DilationResult dilate_to_error(const Observable& target, const Observable& joint, std::size_t axis,
                               double v, PNorm p, const DilationOptions& options = {});

}  // namespace covmur

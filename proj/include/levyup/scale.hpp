#pragma once

#include "levyup/process_spec.hpp"

namespace levyup {

enum class ScaleMethod { closed_form, numeric_inversion };

// Scale function W of a spectrally negative spec, characterized by the
// Laplace transform of W being 1/psi. closed_form covers brownian_drift
// (exact two-pole inversion, any drift sign) and driftless stable_sn;
// numeric_inversion inverts 1/psi(kappa + s) by Euler-summation of the
// Bromwich series and untilts by exp(kappa * x), with an internal error
// estimate checked against a 1e-6 relative target.
double scale_w(const ProcessSpec& spec, double x, ScaleMethod method);

// Probability that the process started at x reaches y before passing below
// 0: W(x)/W(y), for 0 < x < y. Uses the closed form when available.
double first_passage_prob(const ProcessSpec& spec, double x, double y);

} // namespace levyup

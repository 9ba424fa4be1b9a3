#pragma once

#include "levyup/check_report.hpp"
#include "levyup/process_spec.hpp"
#include "levyup/rng.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace levyup {

// A discretized trajectory on the grid {0, dt, 2dt, ...}. values[0] is the
// start level. overshoot and residual_bound are diagnostics: the grid
// overshoot past a hit level, and (for conditioned constructions) an upper
// bound on the probability that the finite window misrepresents the target
// law.
struct PathSample {
    double dt = 0;
    double start_level = 0;
    std::vector<double> values;
    enum class StopReason { horizon_reached, level_hit, barrier_hit, rejected };
    StopReason stop_reason = StopReason::horizon_reached;
    double stop_level = 0;
    double overshoot = 0;
    double residual_bound = 0;
    double shift_depth = 0; // depth subtracted by a split/argmin shift
};

struct StopRule {
    enum class Kind { horizon, level_up, barrier_then_lastzero };
    Kind kind;
    double param;
    static StopRule horizon(double t) { return {Kind::horizon, t}; }
    static StopRule level_up(double y) { return {Kind::level_up, y}; }
    static StopRule barrier_then_lastzero(double b) {
        return {Kind::barrier_then_lastzero, b};
    }
};

// One increment of the process over a step of length dt, exact in law:
// Gaussian for brownian_drift, totally skewed stable for stable_sn,
// drift plus compound-Poisson exponential jumps for bv_drift_cpp,
// scaled Poisson counts for poisson_multiple, negated inner increment for
// dual_of.
double sample_increment(const ProcessSpec& spec, double dt, RngStream& stream);

// Compares the empirical mean of exp(lambda * X_dt) over n draws with
// exp(dt * psi(lambda)); passes within 4 standard errors. For spectrally
// positive specs the comparison uses the negated increment, matching the
// side on which psi is defined.
CheckReport validate_increment_law(const ProcessSpec& spec, double dt, double lambda,
                                   long long n, RngStream& stream);

// Euler accumulation of exact increments from start_level until the rule
// fires. Throws on exceeding the step budget (default 1e8).
PathSample simulate_until(const ProcessSpec& spec, double start_level, StopRule rule,
                          double dt, RngStream& stream,
                          std::int64_t step_budget = 100000000);

// Splits at the last grid index with value <= level: pre = [0, i),
// post = [i, n) shifted down by values[i] so the post part starts at 0.
// Throws "horizon too short" unless the final window (last window_frac of
// indices) stays strictly above level + margin.
std::pair<PathSample, PathSample> last_passage_split(const PathSample& path, double level,
                                                     double window_frac = 0.1,
                                                     double margin = 1.0);

// Shifts a path at its argmin: returns values[m..] - values[m]. Throws
// "horizon too short" if the argmin lies in the final window (of fraction
// window_frac) and the path is not monotone there.
PathSample argmin_shift(const PathSample& path, double window_frac = 0.1);

struct VUpAlgo {
    enum class Kind { last_passage_shift, rejection };
    Kind kind;
    double x0 = 0;   // rejection: entrance level
    double ymax = 0; // rejection: acceptance barrier
    static VUpAlgo last_passage_shift() { return {Kind::last_passage_shift, 0, 0}; }
    static VUpAlgo rejection(double x0, double ymax) {
        return {Kind::rejection, x0, ymax};
    }
};

// Path of the process conditioned to stay positive, run until first passage
// of rule.param (a level_up rule). last_passage_shift simulates the tilted
// process to a barrier b = max(15, y+5), splits at the last zero and keeps
// the post part; it requires the (tilted) process to drift upward.
// rejection simulates from x0 until absorption at 0 (retry) or passage of
// ymax (accept) and returns the accepted prefix up to the requested level;
// it refuses when the acceptance probability estimate W(x0)/W(ymax) falls
// below 1e-4.
PathSample simulate_v_up(const ProcessSpec& spec, StopRule rule, double dt,
                         RngStream& stream, VUpAlgo algo);

// Path of the spectrally positive process conditioned to stay positive,
// obtained by shifting the free path at its global argmin. The window is
// extended until the path exceeds its running minimum by a margin chosen so
// the residual probability exp(-kappa * margin) of a later record minimum
// is below 1e-6; the returned path is truncated at first passage of the
// requested level above the minimum.
PathSample simulate_z_up(const ProcessSpec& spec_z, StopRule rule, double dt,
                         RngStream& stream);

} // namespace levyup

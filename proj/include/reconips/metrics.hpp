#pragma once

#include <span>
#include <vector>

#include "reconips/world.hpp"

namespace reconips {

double mean_of(std::span<const double> xs, size_t begin, size_t end);

// Sum of positive excursions of a trace over its baseline across a window.
double auc_above_baseline(std::span<const double> trace, double baseline,
                          size_t post_begin, size_t post_end);

// Post steps until the trace falls to baseline + (peak - baseline) / 2,
// where peak is the value at the stimulus step.
int peak_half_life(std::span<const double> trace, size_t stim_index,
                   double baseline, size_t post_begin, size_t post_end);

// First index whose sliding window of planned actions has a turn fraction
// below the threshold; the window is censored at the trace length.
int turn_rate_tail(std::span<const Action> planned, int window = 5,
                   double threshold = 0.2);

// Non-overlapping windows of up to 3 steps containing >= 2 turns with the
// cell unchanged throughout.
int scan_events(std::span<const Action> actions, std::span<const Cell> cells);

// Maximum over periods p in [p_min, p_max] of the fraction of steps where
// pose_t equals pose_{t+p}, over the final tail_window steps.
double cycle_score(std::span<const AgentPose> poses, int tail_window = 100,
                   int p_min = 2, int p_max = 8);

// Empirical entropy of the action histogram, in bits.
double action_entropy_bits(std::span<const Action> actions);

// 90th percentile (nearest rank) of same-cell run lengths.
int dwell_p90(std::span<const Cell> cells);

// Distinct (cell, heading) pairs.
int unique_viewpoints(std::span<const AgentPose> poses);

}  // namespace reconips

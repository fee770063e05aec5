#include "reconips/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace reconips {

double mean_of(std::span<const double> xs, size_t begin, size_t end) {
  if (begin >= end || end > xs.size()) throw std::invalid_argument("bad window");
  double sum = 0.0;
  for (size_t i = begin; i < end; ++i) sum += xs[i];
  return sum / static_cast<double>(end - begin);
}

double auc_above_baseline(std::span<const double> trace, double baseline,
                          size_t post_begin, size_t post_end) {
  double auc = 0.0;
  for (size_t i = post_begin; i < post_end && i < trace.size(); ++i)
    auc += std::max(0.0, trace[i] - baseline);
  return auc;
}

int peak_half_life(std::span<const double> trace, size_t stim_index,
                   double baseline, size_t post_begin, size_t post_end) {
  double peak = trace[stim_index];
  double level = baseline + (peak - baseline) / 2.0;
  int steps = 0;
  for (size_t i = post_begin; i < post_end && i < trace.size(); ++i) {
    if (trace[i] <= level) return steps;
    ++steps;
  }
  return steps;
}

static bool is_turn(Action a) { return a != Action::Forward; }

int turn_rate_tail(std::span<const Action> planned, int window,
                   double threshold) {
  size_t n = planned.size();
  for (size_t t = 0; t < n; ++t) {
    size_t end = std::min(n, t + static_cast<size_t>(window));
    int turns = 0;
    for (size_t i = t; i < end; ++i) turns += is_turn(planned[i]) ? 1 : 0;
    double frac = static_cast<double>(turns) / static_cast<double>(end - t);
    if (frac < threshold) return static_cast<int>(t);
  }
  return static_cast<int>(n);
}

int scan_events(std::span<const Action> actions, std::span<const Cell> cells) {
  if (actions.size() != cells.size()) throw std::invalid_argument("length mismatch");
  int events = 0;
  size_t i = 0;
  while (i < actions.size()) {
    size_t end = std::min(actions.size(), i + 3);
    int turns = 0;
    bool same_cell = true;
    for (size_t k = i; k < end; ++k) {
      turns += is_turn(actions[k]) ? 1 : 0;
      same_cell &= cells[k] == cells[i];
    }
    if (turns >= 2 && same_cell) {
      ++events;
      i = end;
    } else {
      ++i;
    }
  }
  return events;
}

double cycle_score(std::span<const AgentPose> poses, int tail_window, int p_min,
                   int p_max) {
  size_t n = poses.size();
  size_t begin = n > static_cast<size_t>(tail_window) ? n - static_cast<size_t>(tail_window) : 0;
  size_t len = n - begin;
  double best = 0.0;
  for (int p = p_min; p <= p_max; ++p) {
    size_t period = static_cast<size_t>(p);
    if (len <= period) continue;
    int matches = 0;
    for (size_t t = begin; t + period < n; ++t)
      matches += poses[t] == poses[t + period] ? 1 : 0;
    double frac = static_cast<double>(matches) / static_cast<double>(len - period);
    best = std::max(best, frac);
  }
  return best;
}

double action_entropy_bits(std::span<const Action> actions) {
  if (actions.empty()) return 0.0;
  double counts[3] = {0, 0, 0};
  for (Action a : actions) counts[static_cast<size_t>(a)] += 1.0;
  double n = static_cast<double>(actions.size());
  double bits = 0.0;
  for (double c : counts) {
    if (c <= 0.0) continue;
    double p = c / n;
    bits -= p * std::log2(p);
  }
  return bits;
}

int dwell_p90(std::span<const Cell> cells) {
  if (cells.empty()) return 0;
  std::vector<int> runs;
  int run = 1;
  for (size_t i = 1; i < cells.size(); ++i) {
    if (cells[i] == cells[i - 1]) {
      ++run;
    } else {
      runs.push_back(run);
      run = 1;
    }
  }
  runs.push_back(run);
  std::sort(runs.begin(), runs.end());
  size_t rank = static_cast<size_t>(
      std::ceil(0.9 * static_cast<double>(runs.size())));
  if (rank == 0) rank = 1;
  return runs[rank - 1];
}

int unique_viewpoints(std::span<const AgentPose> poses) {
  std::set<long> seen;
  for (const AgentPose& p : poses)
    seen.insert((static_cast<long>(p.cell.row) << 24) ^
                (static_cast<long>(p.cell.col) << 8) ^
                static_cast<long>(p.heading));
  return static_cast<int>(seen.size());
}

}  // namespace reconips

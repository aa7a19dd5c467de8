#include "satcts/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace satcts {

namespace {

void check_scores(std::span<const double> scores, const ArmSpace& space) {
  if (static_cast<std::int64_t>(scores.size()) != space.num_arms()) {
    fail(ErrorKind::kDimensionMismatch,
         "score table has " + std::to_string(scores.size()) + " entries, expected " +
             std::to_string(space.num_arms()));
  }
}

double mapped(double v, double big) { return std::isinf(v) && v > 0 ? big : v; }

}  // namespace

ReducedCostMatrix reduce_rates(std::span<const double> scores, const ArmSpace& space) {
  check_scores(scores, space);
  const auto& dims = space.dims();
  ReducedCostMatrix out;
  out.rows = dims.M;
  out.cols = dims.num_beams();
  const auto cells = static_cast<std::size_t>(out.rows) * out.cols;
  out.values.resize(cells);
  out.rate_choice.resize(cells);
  for (int m = 0; m < out.rows; ++m) {
    for (int beam = 0; beam < out.cols; ++beam) {
      const std::size_t base = static_cast<std::size_t>(space.flat(m, beam, 0));
      double best = scores[base];
      int best_r = 0;
      for (int r = 1; r < dims.R; ++r) {
        const double v = scores[base + static_cast<std::size_t>(r)];
        if (v >= best) {
          best = v;
          best_r = r;
        }
      }
      const auto cell = static_cast<std::size_t>(m) * out.cols + beam;
      out.values[cell] = best;
      out.rate_choice[cell] = best_r;
    }
  }
  return out;
}

double forced_exploration_value(std::span<const double> scores, const ArmSpace& space) {
  double largest = space.rates().max();
  for (double v : scores) {
    if (std::isfinite(v)) largest = std::max(largest, std::abs(v));
  }
  return 2.0 * space.dims().M * largest + 1.0;
}

Assignment best_assignment(std::span<const double> scores, const ArmSpace& space) {
  const auto& dims = space.dims();
  if (dims.num_beams() < dims.M) {
    fail(ErrorKind::kInfeasible, "best_assignment: B*K < M");
  }
  const ReducedCostMatrix reduced = reduce_rates(scores, space);
  const double big = forced_exploration_value(scores, space);

  const int n_rows = reduced.rows;
  const int n_cols = reduced.cols;
  // Minimize cost = -value. 1-based potentials; column 0 is the virtual root.
  auto cost = [&](int row, int col) {
    return -mapped(reduced.values[static_cast<std::size_t>(row - 1) * n_cols + (col - 1)], big);
  };
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<std::size_t>(n_rows) + 1, 0.0);
  std::vector<double> v(static_cast<std::size_t>(n_cols) + 1, 0.0);
  std::vector<int> owner(static_cast<std::size_t>(n_cols) + 1, 0);  // row matched to column
  std::vector<int> way(static_cast<std::size_t>(n_cols) + 1, 0);
  std::vector<double> min_slack(static_cast<std::size_t>(n_cols) + 1);
  std::vector<char> used(static_cast<std::size_t>(n_cols) + 1);

  for (int row = 1; row <= n_rows; ++row) {
    owner[0] = row;
    int col0 = 0;
    std::fill(min_slack.begin(), min_slack.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[static_cast<std::size_t>(col0)] = 1;
      const int row0 = owner[static_cast<std::size_t>(col0)];
      double delta = kInf;
      int col1 = 0;
      for (int col = 1; col <= n_cols; ++col) {
        const auto c = static_cast<std::size_t>(col);
        if (used[c]) continue;
        const double slack = cost(row0, col) - u[static_cast<std::size_t>(row0)] - v[c];
        if (slack < min_slack[c]) {
          min_slack[c] = slack;
          way[c] = col0;
        }
        if (min_slack[c] < delta) {
          delta = min_slack[c];
          col1 = col;
        }
      }
      for (int col = 0; col <= n_cols; ++col) {
        const auto c = static_cast<std::size_t>(col);
        if (used[c]) {
          u[static_cast<std::size_t>(owner[c])] += delta;
          v[c] -= delta;
        } else {
          min_slack[c] -= delta;
        }
      }
      col0 = col1;
    } while (owner[static_cast<std::size_t>(col0)] != 0);
    do {
      const int col1 = way[static_cast<std::size_t>(col0)];
      owner[static_cast<std::size_t>(col0)] = owner[static_cast<std::size_t>(col1)];
      col0 = col1;
    } while (col0 != 0);
  }

  Assignment result;
  result.choices.resize(static_cast<std::size_t>(n_rows));
  for (int col = 1; col <= n_cols; ++col) {
    const int row = owner[static_cast<std::size_t>(col)];
    if (row == 0) continue;
    auto& choice = result.choices[static_cast<std::size_t>(row - 1)];
    choice.beam = col - 1;
    choice.rate_idx = reduced.rate(row - 1, col - 1);
  }
  return result;
}

Assignment brute_force_assignment(std::span<const double> scores, const ArmSpace& space) {
  check_scores(scores, space);
  const auto& dims = space.dims();
  if (dims.M > 6 || dims.num_beams() > 8) {
    fail(ErrorKind::kInvalidArgument,
         "brute_force_assignment: guard is M <= 6 and B*K <= 8");
  }
  const double big = forced_exploration_value(scores, space);

  Assignment current;
  current.choices.resize(static_cast<std::size_t>(dims.M));
  Assignment best = current;
  double best_total = -std::numeric_limits<double>::infinity();
  std::vector<char> used(static_cast<std::size_t>(dims.num_beams()), 0);

  auto recurse = [&](auto&& self, int m, double partial) -> void {
    if (m == dims.M) {
      if (partial > best_total) {
        best_total = partial;
        best = current;
      }
      return;
    }
    for (int beam = 0; beam < dims.num_beams(); ++beam) {
      if (used[static_cast<std::size_t>(beam)]) continue;
      used[static_cast<std::size_t>(beam)] = 1;
      for (int r = 0; r < dims.R; ++r) {
        current.choices[static_cast<std::size_t>(m)] = ArmChoice{beam, r};
        const double s = mapped(scores[static_cast<std::size_t>(space.flat(m, beam, r))], big);
        self(self, m + 1, partial + s);
      }
      used[static_cast<std::size_t>(beam)] = 0;
    }
  };
  recurse(recurse, 0, 0.0);
  return best;
}

double assignment_total(std::span<const double> scores, const Assignment& assignment,
                        const ArmSpace& space) {
  check_scores(scores, space);
  const double big = forced_exploration_value(scores, space);
  double total = 0.0;
  for (int m = 0; m < assignment.size(); ++m) {
    const auto& c = assignment.choices[static_cast<std::size_t>(m)];
    total += mapped(scores[static_cast<std::size_t>(space.flat(m, c.beam, c.rate_idx))], big);
  }
  return total;
}

}  // namespace satcts

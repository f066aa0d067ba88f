#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "udgo/rng.hpp"

namespace udgo {

// n x n grid of on/off cells, 1-based, x = column, y = row.
class GridInstance {
 public:
  explicit GridInstance(int n, bool on = true)
      : n_(n), on_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), on ? 1 : 0) {
    if (n < 1) throw std::invalid_argument("grid: side must be >= 1");
  }

  int size() const { return n_; }
  bool on(int x, int y) const { return on_[index(x, y)] != 0; }
  void set(int x, int y, bool value) { on_[index(x, y)] = value ? 1 : 0; }

  friend bool operator==(const GridInstance&, const GridInstance&) = default;

 private:
  std::size_t index(int x, int y) const {
    if (x < 1 || x > n_ || y < 1 || y > n_) throw std::out_of_range("grid: cell out of range");
    return static_cast<std::size_t>(y - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(x - 1);
  }

  int n_;
  std::vector<std::uint8_t> on_;
};

// Cells reachable from (1,1) by up/right steps through on cells; empty if
// (1,1) is off.  result[(y-1) n + (x-1)].
inline std::vector<std::uint8_t> reachable_cells(const GridInstance& g) {
  const int n = g.size();
  std::vector<std::uint8_t> reach(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (int y = 1; y <= n; ++y) {
    for (int x = 1; x <= n; ++x) {
      if (!g.on(x, y)) continue;
      const bool from_start = x == 1 && y == 1;
      const bool from_left = x > 1 && reach[static_cast<std::size_t>((y - 1) * n + (x - 2))];
      const bool from_below = y > 1 && reach[static_cast<std::size_t>((y - 2) * n + (x - 1))];
      if (from_start || from_left || from_below) reach[static_cast<std::size_t>((y - 1) * n + (x - 1))] = 1;
    }
  }
  return reach;
}

inline bool grid_reachable(const GridInstance& g) {
  const int n = g.size();
  return reachable_cells(g)[static_cast<std::size_t>(n) * static_cast<std::size_t>(n) - 1] != 0;
}

struct PercEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sqrt(mean (1 - mean) / trials)
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

// Grid for Monte-Carlo trial `trial`: each cell off with probability q,
// drawn row by row from the trial's own stream.
inline GridInstance sample_grid(int n, double q, std::uint64_t seed, std::uint64_t trial) {
  Rng rng(seed, stream::trials_base + trial);
  GridInstance g(n);
  for (int y = 1; y <= n; ++y) {
    for (int x = 1; x <= n; ++x) g.set(x, y, !(rng.uniform() < q));
  }
  return g;
}

inline PercEstimate sample_no_path_prob(int n, double q, std::uint64_t trials, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_no_path_prob: n must be >= 1");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("sample_no_path_prob: q must lie in [0, 1]");
  if (trials < 1) throw std::invalid_argument("sample_no_path_prob: trials must be >= 1");
  std::uint64_t blocked = 0;
  for (std::uint64_t j = 0; j < trials; ++j) {
    if (!grid_reachable(sample_grid(n, q, seed, j))) ++blocked;
  }
  PercEstimate e;
  e.mean = static_cast<double>(blocked) / static_cast<double>(trials);
  e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(trials));
  e.trials = trials;
  e.seed = seed;
  return e;
}

inline constexpr int kMaxExactGrid = 16;

// Exact probability that (n,n) is unreachable from (1,1) when each cell is
// off independently with probability q.  Sweeps cells column by column,
// bottom to top; the state is the reachability bitmask of the frontier
// (rows below the current cell already in the new column).
inline double exact_no_path_prob(int n, double q) {
  if (n < 1) throw std::invalid_argument("exact_no_path_prob: n must be >= 1");
  if (n > kMaxExactGrid) throw std::invalid_argument("exact_no_path_prob: n too large for the exact sweep");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("exact_no_path_prob: q must lie in [0, 1]");
  const double p = 1.0 - q;
  const std::size_t states = std::size_t{1} << n;
  std::vector<double> cur(states, 0.0);
  std::vector<double> next(states, 0.0);
  cur[1] = 1.0;  // virtual reachable cell left of (1,1)
  for (int x = 1; x <= n; ++x) {
    for (int y = 0; y < n; ++y) {
      const std::size_t bit = std::size_t{1} << y;
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t m = 0; m < states; ++m) {
        const double pm = cur[m];
        if (pm == 0.0) continue;
        const bool left = (m & bit) != 0;
        const bool below = y > 0 && (m & (bit >> 1)) != 0;
        if (left || below) {
          next[m | bit] += pm * p;
          next[m & ~bit] += pm * q;
        } else {
          next[m & ~bit] += pm;
        }
      }
      cur.swap(next);
    }
  }
  const std::size_t top = std::size_t{1} << (n - 1);
  double blocked = 0.0;
  for (std::size_t m = 0; m < states; ++m) {
    if (!(m & top)) blocked += cur[m];
  }
  return blocked;
}

inline constexpr double kPercolationQ0 = 1.0 / (1024.0 * 81.0);

struct NoPathBound {
  double contour = 0.0;     // 4 a^2 / (1 - a)^3, a = 3 q^(1/4)
  double simplified = 0.0;  // 32 * 9 * q^(1/2)
};

// Contour-counting bound on the no-path probability, valid for 0 < q < q0.
inline NoPathBound no_path_bound(double q) {
  if (!(q > 0.0 && q < kPercolationQ0)) {
    throw std::domain_error("no_path_bound: q outside (0, 1/(2^10 3^4))");
  }
  const double a = 3.0 * std::pow(q, 0.25);
  return {4.0 * a * a / std::pow(1.0 - a, 3), 288.0 * std::sqrt(q)};
}

// Whether the off cells contain a connected component (4- or 8-neighbour
// adjacency) touching the left or top side and also the bottom or right
// side, i.e. a chain of off cells walling (1,1) off from (n,n).
inline bool antipath_exists(const GridInstance& g, int connectivity) {
  if (connectivity != 4 && connectivity != 8) throw std::invalid_argument("antipath_exists: connectivity must be 4 or 8");
  const int n = g.size();
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  std::deque<std::pair<int, int>> queue;
  auto visit = [&](int x, int y) {
    auto& s = seen[static_cast<std::size_t>((y - 1) * n + (x - 1))];
    if (s || g.on(x, y)) return;
    s = 1;
    queue.emplace_back(x, y);
  };
  for (int i = 1; i <= n; ++i) {
    visit(1, i);
    visit(i, n);
  }
  while (!queue.empty()) {
    const auto [x, y] = queue.front();
    queue.pop_front();
    if (y == 1 || x == n) return true;
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        if (dx == 0 && dy == 0) continue;
        if (connectivity == 4 && dx != 0 && dy != 0) continue;
        const int nx = x + dx;
        const int ny = y + dy;
        if (nx >= 1 && nx <= n && ny >= 1 && ny <= n) visit(nx, ny);
      }
    }
  }
  return false;
}

// Text format: first line n, then n rows of '0'/'1', top row (y = n) first.
inline void write_grid(std::ostream& os, const GridInstance& g) {
  const int n = g.size();
  std::string out = std::to_string(n) + "\n";
  for (int y = n; y >= 1; --y) {
    for (int x = 1; x <= n; ++x) out += g.on(x, y) ? '1' : '0';
    out += '\n';
  }
  os << out;
}

inline GridInstance read_grid(std::istream& is) {
  int n = 0;
  if (!(is >> n) || n < 1) throw std::runtime_error("grid file: bad size");
  GridInstance g(n);
  for (int y = n; y >= 1; --y) {
    std::string row;
    if (!(is >> row) || static_cast<int>(row.size()) != n) throw std::runtime_error("grid file: bad row");
    for (int x = 1; x <= n; ++x) {
      const char c = row[static_cast<std::size_t>(x - 1)];
      if (c != '0' && c != '1') throw std::runtime_error("grid file: bad cell");
      g.set(x, y, c == '1');
    }
  }
  return g;
}

}  // namespace udgo

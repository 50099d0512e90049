#include "osg/solver.hpp"

#include <cmath>
#include <limits>

namespace osg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_group_count(Index n_shots, int k) {
  if (k < 1 || k > n_shots) {
    throw ValidationError("group count K=" + std::to_string(k) + " outside [1, " +
                          std::to_string(n_shots) + "]");
  }
}

}  // namespace

DPTable::DPTable(int n_shots, int max_groups)
    : n_shots_(n_shots),
      max_groups_(max_groups),
      cost_(Matrix::Constant(max_groups, n_shots, kInf)),
      argmin_(Eigen::MatrixXi::Zero(max_groups, n_shots)) {}

double division_cost(const DistanceMatrix& d, const Division& div) {
  if (div.n_shots() != d.size()) {
    throw ValidationError("division covers " + std::to_string(div.n_shots()) +
                          " shots but the matrix has " + std::to_string(d.size()));
  }
  double total = 0.0;
  int prev = 0;
  for (int t : div.boundaries()) {
    total += d.block_sum(prev + 1, t);
    prev = t;
  }
  return total;
}

DPTable build_table(const DistanceMatrix& d, int max_groups) {
  const int n_shots = static_cast<int>(d.size());
  check_group_count(n_shots, max_groups);
  DPTable table(n_shots, max_groups);
  for (int n = 1; n <= n_shots; ++n) {
    table.cost_(0, n - 1) = d.block_sum(n, n_shots);
    table.argmin_(0, n - 1) = n_shots;
  }
  for (int k = 2; k <= max_groups; ++k) {
    const int last = table.last_split(k);
    for (int n = last; n >= 1; --n) {
      double best = kInf;
      int best_i = n;
      for (int i = n; i <= last; ++i) {
        const double g = d.block_sum(n, i) + table.cost_(k - 2, i);
        if (g < best) {
          best = g;
          best_i = i;
        }
      }
      table.cost_(k - 1, n - 1) = best;
      table.argmin_(k - 1, n - 1) = best_i;
    }
  }
  return table;
}

GRow g_row(const DistanceMatrix& d, const DPTable& table, int n, int k) {
  if (k < 2 || k > table.max_groups()) {
    throw std::out_of_range("g_row: k=" + std::to_string(k) + " outside [2, " +
                            std::to_string(table.max_groups()) + "]");
  }
  const int last = table.last_split(k);
  if (n < 1 || n > last) {
    throw std::out_of_range("g_row: n=" + std::to_string(n) + " cannot hold " + std::to_string(k) +
                            " groups");
  }
  GRow row{n, k, n, Vector(last - n + 1)};
  for (int i = n; i <= last; ++i) {
    row.values(i - n) = d.block_sum(n, i) + table.cost(i + 1, k - 1);
  }
  return row;
}

Division traceback(const DPTable& table, int k) {
  if (k < 1 || k > table.max_groups()) throw ValidationError("traceback: K outside table");
  std::vector<int> b;
  b.reserve(static_cast<std::size_t>(k));
  int n = 1;
  for (int level = k; level >= 2; --level) {
    const int i = table.argmin(n, level);
    b.push_back(i);
    n = i + 1;
  }
  b.push_back(table.n_shots());
  return Division(std::move(b), table.n_shots());
}

Solution solve(const DistanceMatrix& d, int k) {
  DPTable table = build_table(d, k);
  Division div = traceback(table, k);
  return {std::move(div), std::move(table)};
}

BruteForceResult brute_force(const DistanceMatrix& d, int k) {
  const int n_shots = static_cast<int>(d.size());
  check_group_count(n_shots, k);
  // C(N-1, K-1), bailing out early once past the guard.
  constexpr double kLimit = 1e6;
  double count = 1.0;
  for (int j = 1; j <= k - 1; ++j) {
    count = count * (n_shots - k + j) / j;
    if (count > kLimit) {
      throw ValidationError("brute_force: more than 1e6 candidate divisions; use solve instead");
    }
  }

  // Cut points c[0] < ... < c[K-2] drawn from 1..N-1, visited in
  // lexicographic order.
  std::vector<int> cuts(static_cast<std::size_t>(k - 1));
  for (int j = 0; j < k - 1; ++j) cuts[static_cast<std::size_t>(j)] = j + 1;

  std::vector<int> best_cuts = cuts;
  double best = kInf;
  const auto cost_of = [&](const std::vector<int>& c) {
    double total = 0.0;
    int prev = 0;
    for (int t : c) {
      total += d.block_sum(prev + 1, t);
      prev = t;
    }
    return total + d.block_sum(prev + 1, n_shots);
  };
  while (true) {
    const double c = cost_of(cuts);
    if (c < best) {
      best = c;
      best_cuts = cuts;
    }
    int j = k - 2;
    while (j >= 0 && cuts[static_cast<std::size_t>(j)] == n_shots - 1 - (k - 2 - j)) --j;
    if (j < 0) break;
    ++cuts[static_cast<std::size_t>(j)];
    for (int m = j + 1; m < k - 1; ++m) {
      cuts[static_cast<std::size_t>(m)] = cuts[static_cast<std::size_t>(m - 1)] + 1;
    }
  }
  best_cuts.push_back(n_shots);
  return {Division(std::move(best_cuts), n_shots), best};
}

Vector standardize_row(const Vector& g) {
  const double mean = g.mean();
  const double var = (g.array() - mean).square().mean();
  const double sd = std::sqrt(var);
  if (!(sd > 0.0)) return Vector::Zero(g.size());
  return (g.array() - mean) / sd;
}

FusedSolution solve_fused(const DistanceMatrix& dx, const DistanceMatrix& dy, int k) {
  if (dx.size() != dy.size()) {
    throw ValidationError("fused modalities disagree on shot count (" + std::to_string(dx.size()) +
                          " vs " + std::to_string(dy.size()) + ")");
  }
  const int n_shots = static_cast<int>(dx.size());
  check_group_count(n_shots, k);
  const DPTable tx = build_table(dx, k);
  const DPTable ty = build_table(dy, k);

  FusedSolution out{Division({n_shots}, n_shots), {}};
  std::vector<int> b;
  int n = 1;
  for (int level = k; level >= 2; --level) {
    const Vector gx = standardize_row(g_row(dx, tx, n, level).values);
    const Vector gy = standardize_row(g_row(dy, ty, n, level).values);
    double best = kInf;
    int best_i = 0;
    int best_modality = 0;
    for (Index j = 0; j < gx.size(); ++j) {
      const int modality = gy(j) < gx(j) ? 1 : 0;
      const double v = modality == 0 ? gx(j) : gy(j);
      if (v < best) {
        best = v;
        best_i = static_cast<int>(j);
        best_modality = modality;
      }
    }
    const int split = n + best_i;
    b.push_back(split);
    out.chosen_modality.push_back(best_modality);
    n = split + 1;
  }
  b.push_back(n_shots);
  out.division = Division(std::move(b), n_shots);
  return out;
}

}  // namespace osg

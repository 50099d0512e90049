#pragma once

#include "osg/distance.hpp"

#include <vector>

namespace osg {

// Dynamic-programming table for sequential grouping. cost(n, k) is the
// optimal cost of splitting shots n..N (1-based) into k contiguous groups;
// argmin(n, k) is the last shot of the first group in that optimum.
// Cells that cannot hold k groups are +inf / 0.
class DPTable {
 public:
  DPTable(int n_shots, int max_groups);

  int n_shots() const { return n_shots_; }
  int max_groups() const { return max_groups_; }

  double cost(int n, int k) const { return cost_(k - 1, n - 1); }
  int argmin(int n, int k) const { return argmin_(k - 1, n - 1); }

  /// Valid split indices for cell (n, k), k >= 2: [n, N - (k - 1)].
  int last_split(int k) const { return n_shots_ - (k - 1); }

 private:
  friend DPTable build_table(const DistanceMatrix& d, int max_groups);

  int n_shots_;
  int max_groups_;
  Matrix cost_;
  Eigen::MatrixXi argmin_;
};

/// Candidate costs of a single cell: values[i - first] = block(n, i) + C(i+1, k-1).
struct GRow {
  int n = 0;
  int k = 0;
  int first = 0;
  Vector values;

  int last() const { return first + static_cast<int>(values.size()) - 1; }
};

struct Solution {
  Division division;
  DPTable table;
};

struct BruteForceResult {
  Division division;
  double cost;
};

struct FusedSolution {
  Division division;
  /// Which modality (0 = first, 1 = second) had the lower normalized
  /// score at each interior boundary.
  std::vector<int> chosen_modality;
};

/// Sum of intra-group block sums for a division.
double division_cost(const DistanceMatrix& d, const Division& div);

/// Fills levels k = 1..max_groups in ascending k, descending n. Ties in the
/// min go to the smallest split index.
DPTable build_table(const DistanceMatrix& d, int max_groups);

GRow g_row(const DistanceMatrix& d, const DPTable& table, int n, int k);

/// Follows stored argmins from (1, K).
Division traceback(const DPTable& table, int k);

Solution solve(const DistanceMatrix& d, int k);

/// Exhaustive search over all C(N-1, K-1) divisions. Ties resolve to the
/// lexicographically smallest boundary vector. Refuses instances with more
/// than 1e6 candidates.
BruteForceResult brute_force(const DistanceMatrix& d, int k);

/// Standardizes a candidate row: (g - mean) / std, population std. A
/// zero-variance row maps to all zeros.
Vector standardize_row(const Vector& g);

/// Two-modality solve. Each modality keeps its own table; at every traceback
/// step the split with the lowest standardized score across both modalities
/// wins. Modality ties go to the first modality.
FusedSolution solve_fused(const DistanceMatrix& dx, const DistanceMatrix& dy, int k);

}  // namespace osg

#pragma once

#include "osg/solver.hpp"

#include <vector>

namespace osg {

// Softmin over one cell's candidate costs.
struct ProbRow {
  int n = 0;
  int k = 0;
  int first = 0;
  Vector g;  // candidate costs G(i), i = first..first+size-1
  Vector p;  // softmin(G)
};

/// Division probabilities for every cell (n, k), 2 <= k <= K, built on top
/// of the hard-min table.
struct ProbTable {
  int n_shots = 0;
  int max_groups = 0;
  DPTable hard;
  std::vector<ProbRow> rows;
};

/// Per-index division scores: t(i-1) is the average probability of dividing
/// after shot i, normalized by N*K. counts(i-1) is the number of rows where
/// index i is a candidate.
struct DivisionScores {
  Vector t;
  std::vector<int> counts;
};

struct ProbLossResult {
  double loss = 0.0;
  DivisionScores scores;
  Matrix grad;  // dloss/dD, symmetric, zero diagonal
};

inline constexpr double kScoreFloor = 1e-300;

/// exp(-g) / sum exp(-g), shifted by min(g).
Vector softmin(const Vector& g);

ProbTable prob_table(const DistanceMatrix& d, int k);

DivisionScores division_scores(const ProbTable& pt);

/// -sum over annotated divisions of log T(i). Throws if the labels hold a
/// single scene.
double ce_loss(const DivisionScores& scores, const SceneLabels& gt);

/// Loss, scores and the exact gradient with respect to D. The hard min of the
/// recursion routes gradient along the stored argmin.
ProbLossResult ce_loss_with_grad(const DistanceMatrix& d, int k, const SceneLabels& gt);

Matrix ce_loss_backward(const DistanceMatrix& d, int k, const SceneLabels& gt);

}  // namespace osg

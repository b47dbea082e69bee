#include "tempotsp/kyoto.h"

namespace tempotsp {

TimeDependentGraph kyoto_fixture() {
  TimeDependentGraph g;
  g.nodes = {"v0", "v1", "v2", "v3", "v4", "v5", "v6"};
  g.periods = PeriodGrid{8 * 3600, 7200, 5};

  // weights[from][to][period], minutes.
  static const double kWeights[7][7][5] = {
      {{0, 0, 0, 0, 0},
       {42, 33, 31, 28, 32},
       {54, 52, 50, 45, 49},
       {52, 37, 38, 35, 33},
       {12, 16, 13, 14, 15},
       {23, 22, 25, 24, 21},
       {4, 4, 6, 6, 7}},
      {{42, 36, 32, 30, 28},
       {0, 0, 0, 0, 0},
       {23, 22, 19, 24, 54},
       {73, 27, 60, 38, 59},
       {33, 34, 31, 33, 38},
       {30, 28, 36, 34, 32},
       {55, 45, 45, 36, 34}},
      {{56, 57, 54, 51, 50},
       {26, 23, 19, 19, 56},
       {0, 0, 0, 0, 0},
       {60, 73, 71, 68, 103},
       {21, 22, 18, 18, 20},
       {19, 17, 21, 20, 40},
       {65, 53, 59, 51, 49}},
      {{38, 36, 35, 30, 30},
       {70, 29, 20, 15, 37},
       {83, 82, 68, 67, 67},
       {0, 0, 0, 0, 0},
       {51, 48, 45, 45, 48},
       {59, 51, 45, 39, 42},
       {17, 19, 17, 18, 16}},
      {{16, 17, 17, 15, 16},
       {39, 37, 30, 32, 34},
       {27, 21, 20, 16, 19},
       {44, 55, 47, 51, 51},
       {0, 0, 0, 0, 0},
       {4, 5, 5, 4, 4},
       {15, 16, 16, 15, 17}},
      {{31, 26, 25, 27, 27},
       {27, 29, 26, 30, 28},
       {23, 20, 22, 20, 25},
       {58, 58, 58, 57, 58},
       {5, 5, 4, 5, 5},
       {0, 0, 0, 0, 0},
       {32, 30, 32, 26, 30}},
      {{5, 5, 6, 5, 5},
       {51, 49, 49, 36, 44},
       {61, 49, 58, 50, 60},
       {22, 21, 21, 21, 21},
       {21, 17, 19, 15, 17},
       {29, 25, 26, 30, 26},
       {0, 0, 0, 0, 0}},
  };

  static const double kTheta[7][5] = {
      {0.493, 0.686, 0.782, 0.868, 1.00},
      {0.790, 1.00, 0.833, 0.714, 0.526},
      {0.757, 1.00, 0.958, 0.975, 0.483},
      {0.406, 0.704, 0.839, 1.00, 0.654},
      {1.00, 0.778, 0.854, 0.753, 0.701},
      {1.00, 0.818, 0.800, 0.806, 0.725},
      {0.603, 0.819, 0.939, 1.00, 0.906},
  };

  static const double kStayMinutes[7] = {0, 150, 50, 50, 90, 50, 40};

  const int n = 7;
  const int P = 5;
  g.weights.resize(static_cast<size_t>(n) * n * P);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int p = 0; p < P; ++p) {
        g.weight_ref(i, j, p) = kWeights[i][j][p];
      }
    }
  }
  g.stay_minutes.assign(kStayMinutes, kStayMinutes + n);
  g.theta.resize(n);
  for (int i = 0; i < n; ++i) {
    g.theta[i].assign(kTheta[i], kTheta[i] + P);
  }
  g.validate();
  return g;
}

}  // namespace tempotsp

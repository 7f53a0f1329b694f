#pragma once

#include "oga/types.hpp"

#include <array>
#include <initializer_list>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace oga::test {

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline SmallMatrix identity(int d) { return SmallMatrix::Identity(d, d); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// One published OGA convergence table: errors and orders at n = 16..256.
struct PublishedTable {
  std::string name;
  std::array<double, 5> l2;
  std::array<double, 5> l2_order;  // NaN where the table prints none
  std::array<double, 5> h1;
  std::array<double, 5> h1_order;
};

inline constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

/// Every published OGA convergence table, transcribed verbatim.
inline std::vector<PublishedTable> published_tables() {
  return {
      {"ex1 c=-1",
       {6.740e-4, 6.793e-5, 7.699e-6, 8.990e-7, 1.117e-7},
       {kNone, 3.31, 3.14, 3.10, 3.01},
       {2.428e-2, 5.290e-3, 1.232e-3, 2.987e-4, 7.520e-5},
       {kNone, 2.20, 2.10, 2.04, 1.99}},
      {"ex1 c=-1e6",
       {5.352e-4, 6.746e-5, 8.110e-6, 1.014e-6, 1.301e-7},
       {kNone, 2.99, 3.06, 3.00, 2.96},
       {2.296e-2, 5.518e-3, 1.353e-3, 3.352e-4, 8.568e-5},
       {kNone, 2.06, 2.03, 2.01, 1.97}},
      {"ex2 c=-1",
       {4.131e-1, 2.709e-1, 2.433e-2, 4.591e-3, 7.009e-4},
       {kNone, 0.61, 3.48, 2.41, 2.71},
       {1.764e1, 1.048e1, 2.585, 8.878e-1, 2.430e-1},
       {kNone, 0.75, 2.02, 1.54, 1.87}},
      {"ex2 c=-1e6",
       {4.245e-1, 2.787e-1, 2.232e-2, 4.515e-3, 6.633e-4},
       {kNone, 0.61, 3.64, 2.31, 2.77},
       {1.854e1, 1.163e1, 2.785, 9.733e-1, 2.827e-1},
       {kNone, 0.67, 2.06, 1.52, 1.78}},
      // The first-row orders of the Example 3 tables (0.38/0.20 and 0.46/0.28)
      // have no predecessor row to be computed from and are left out.
      {"ex3 c=-1",
       {1.508e-2, 9.989e-3, 3.716e-3, 9.624e-4, 3.262e-4},
       {kNone, 0.59, 1.43, 1.95, 1.56},
       {4.041e-1, 3.086e-1, 1.360e-1, 5.825e-2, 2.889e-2},
       {kNone, 0.39, 1.18, 1.22, 1.01}},
      {"ex3 c=-1e6",
       {1.251e-2, 8.387e-3, 3.822e-3, 1.245e-3, 4.651e-4},
       {kNone, 0.58, 1.13, 1.62, 1.42},
       {3.887e-1, 3.309e-1, 1.765e-1, 8.581e-2, 4.545e-2},
       {kNone, 0.23, 0.91, 1.04, 0.92}},
      {"ex4 c=-1",
       {2.530e-1, 2.699e-2, 5.618e-3, 6.093e-4, 1.099e-4},
       {kNone, 3.23, 2.26, 3.20, 2.47},
       {2.713, 5.899e-1, 2.132e-1, 4.460e-2, 9.620e-3},
       {kNone, 2.20, 1.47, 2.26, 2.21}},
      {"ex4 c=-1e6",
       {2.526e-1, 2.943e-2, 5.562e-3, 5.023e-4, 5.746e-5},
       {kNone, 3.10, 2.40, 3.47, 3.13},
       {2.838, 6.994e-1, 2.376e-1, 4.736e-2, 1.031e-2},
       {kNone, 2.02, 1.56, 2.33, 2.20}},
      {"ex5 k=2pi",
       {2.801e-2, 2.229e-3, 2.952e-4, 3.887e-5, 1.176e-5},
       {kNone, 3.65, 2.92, 2.93, 1.73},
       {1.382e-1, 2.600e-2, 6.435e-3, 1.649e-3, 4.430e-4},
       {kNone, 2.41, 2.01, 1.96, 1.90}},
      {"ex5 k=10pi",
       {2.150, 7.305e-1, 6.410e-2, 5.674e-3, 8.196e-4},
       {kNone, 1.56, 3.51, 3.50, 2.79},
       {3.399, 1.193, 1.719e-1, 4.195e-2, 1.134e-2},
       {kNone, 1.51, 2.80, 2.03, 1.89}},
  };
}

}  // namespace oga::test

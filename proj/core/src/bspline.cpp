// Copyright 2026 The HomOpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "homopt/bspline.hpp"

#include <algorithm>
#include <cassert>

namespace homopt {

std::vector<double> open_uniform_knots(int n_basis, int degree, double lo, double hi) {
  assert(n_basis > degree && hi > lo);
  const int n_knots = n_basis + degree + 1;
  const int n_segments = n_basis - degree;  // interior intervals
  std::vector<double> knots(static_cast<std::size_t>(n_knots));
  for (int i = 0; i < n_knots; ++i) {
    const double t = std::clamp(static_cast<double>(i - degree) / n_segments, 0.0, 1.0);
    knots[static_cast<std::size_t>(i)] = lo + t * (hi - lo);
  }
  // pin the repeated boundary knots exactly
  for (int i = 0; i <= degree; ++i) {
    knots[static_cast<std::size_t>(i)] = lo;
    knots[static_cast<std::size_t>(n_knots - 1 - i)] = hi;
  }
  return knots;
}

namespace {

int find_span(const std::vector<double>& knots, int degree, double x) {
  const int n_basis = static_cast<int>(knots.size()) - degree - 1;
  if (x >= knots[static_cast<std::size_t>(n_basis)]) return n_basis - 1;
  if (x <= knots[static_cast<std::size_t>(degree)]) return degree;
  int lo = degree;
  int hi = n_basis;
  int mid = (lo + hi) / 2;
  while (x < knots[static_cast<std::size_t>(mid)] ||
         x >= knots[static_cast<std::size_t>(mid + 1)]) {
    if (x < knots[static_cast<std::size_t>(mid)])
      hi = mid;
    else
      lo = mid;
    mid = (lo + hi) / 2;
  }
  return mid;
}

}  // namespace

int bspline_basis_nonzero(const std::vector<double>& knots, int degree, double x,
                          double* out) {
  const int span = find_span(knots, degree, x);
  // triangular scheme from the standard basis-function recurrence
  double left[16];
  double right[16];
  assert(degree < 16);
  out[0] = 1.0;
  for (int j = 1; j <= degree; ++j) {
    left[j] = x - knots[static_cast<std::size_t>(span + 1 - j)];
    right[j] = knots[static_cast<std::size_t>(span + j)] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double temp = out[r] / (right[r + 1] + left[j - r]);
      out[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    out[j] = saved;
  }
  return span - degree;
}

std::vector<double> bspline_basis(const std::vector<double>& knots, int degree,
                                  double x) {
  const int n_basis = static_cast<int>(knots.size()) - degree - 1;
  std::vector<double> values(static_cast<std::size_t>(n_basis), 0.0);
  double local[16];
  const int first = bspline_basis_nonzero(knots, degree, x, local);
  for (int k = 0; k <= degree; ++k)
    values[static_cast<std::size_t>(first + k)] = local[k];
  return values;
}

}  // namespace homopt

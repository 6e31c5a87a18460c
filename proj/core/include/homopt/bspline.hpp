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

#ifndef HOMOPT_BSPLINE_HPP_
#define HOMOPT_BSPLINE_HPP_

#include <vector>

namespace homopt {

// Clamped (open) uniform knot vector for n_basis B-splines of the given
// degree on [lo, hi]: degree+1 repeated knots at each boundary and
// n_basis - degree - 1 uniformly spaced interior knots. Requires
// n_basis > degree and hi > lo.
std::vector<double> open_uniform_knots(int n_basis, int degree, double lo, double hi);

// Cox-de Boor evaluation of the degree+1 basis functions that are nonzero
// at x. Writes them to out[0..degree] and returns the index of the first
// nonzero basis function. x must lie within [lo, hi] of the knot vector;
// callers clamp beforehand.
int bspline_basis_nonzero(const std::vector<double>& knots, int degree, double x,
                          double* out);

// Dense evaluation of all n_basis basis functions at x (test convenience).
std::vector<double> bspline_basis(const std::vector<double>& knots, int degree,
                                  double x);

}  // namespace homopt

#endif  // HOMOPT_BSPLINE_HPP_

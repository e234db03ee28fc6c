// transport.h
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
//
// Copyright 2026 The mtht Authors.
//
// \file
// Exact solver for the balanced transportation problem
//
//   minimize  sum_ij cost(i, j) x(i, j)
//   s.t.      sum_j x(i, j) = supply(i),  sum_i x(i, j) = demand(j),  x >= 0
//
// by the transportation simplex (MODI) method: a northwest-corner basic
// feasible solution followed by pivots on the most negative reduced cost,
// switching to Bland's rule if progress stalls on degenerate pivots.

#ifndef MTHT_TRANSPORT_H_
#define MTHT_TRANSPORT_H_

#include <cstddef>
#include <span>
#include <vector>

namespace mtht {

struct Flow {
  std::size_t from = 0;
  std::size_t to = 0;
  double mass = 0;
};

struct TransportSolution {
  double cost = 0;
  std::vector<Flow> flows;          // basic cells with positive mass
  std::vector<double> row_potential;  // dual u
  std::vector<double> col_potential;  // dual v
  std::size_t pivots = 0;
};

// `cost` is row-major supply.size() x demand.size(). Supplies and demands
// must be non-negative with equal totals (relative tolerance 1e-9).
// Reduced costs above -tolerance count as optimal.
TransportSolution solve_transport(std::span<const double> supply,
                                  std::span<const double> demand,
                                  std::span<const double> cost,
                                  double tolerance = 1e-9);

}  // namespace mtht

#endif  // MTHT_TRANSPORT_H_

// Copyright 2026 The flsss Authors
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

#include "flsss/contraction.hpp"

namespace flsss {

ElementTable<double> scalar_table(const Superset1D& s) {
  ElementTable<double> t(s.size(), 1);
  for (int i = 0; i < s.size(); ++i) t.row(i)[0] = s[i];
  return t;
}

ContractionResult contract_1d(const Superset1D& s, const IndexBounds& start,
                              TargetRange range, SearchMode mode,
                              SweepOrder order) {
  validate_bounds(start, s.size());
  const int n = start.dims();
  const ScalarAlgebra alg;
  const ElementTable<double> x = scalar_table(s);
  const QuasiTriangleMatrix<ScalarAlgebra> m(alg, x, n);
  Contractor<ScalarAlgebra> c(alg, x, m, mode);

  ContractionResult r;
  r.bounds = start;
  double fixed = 0.0;
  for (int k = 0; k < n; ++k) {
    r.sum_lower += s[start.lower[k]];
    r.sum_upper += s[start.upper[k]];
  }
  BoxRef<double> box{n, r.bounds.lower.data(), r.bounds.upper.data(),
                     &r.sum_lower, &r.sum_upper, &fixed};
  r.feasible = c.contract(box, &range.min, &range.max, order);
  return r;
}

}  // namespace flsss

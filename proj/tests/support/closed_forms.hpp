// Copyright 2026 The qbb developers.
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

#ifndef QBB_TEST_CLOSED_FORMS_HPP
#define QBB_TEST_CLOSED_FORMS_HPP

#include <cmath>

namespace qbb::test {

// Reference values for the imaging model (d phases, n photons, probe
// weight alpha, weight matrix I/d).
struct ImagingForms {
  double prior, spm, pgm, pgm_star, rpm;

  ImagingForms(int d, int n, double alpha) {
    const double a2 = alpha * alpha;
    const double p3 = M_PI * M_PI / 3.0;
    const double n2 = double(n) * n;
    prior = p3 / n2;
    spm = (p3 - 4.0 * a2 / ((1.0 + a2) * (d + a2))) / n2;
    pgm = 2.0 * (p3 - 2.0 * alpha / (d + a2)) / n2;
    pgm_star = (p3 - 2.0 * a2 / ((d + a2) * (d + a2))) / n2;
    rpm = (p3 - (1.0 + a2) / (d + a2)) / n2;
  }
};

// Reference values for planar tomography with second moments (v1, v2).
struct PlanarForms {
  double prior, spm, pgm, pgm_star;

  PlanarForms(double v1, double v2) {
    prior = v1 + v2;
    spm = v1 + v2 - (v1 * v1 + v2 * v2);
    pgm = 2.0 * spm;
    pgm_star = v1 + v2 - (v1 * v1 * v1 + v2 * v2 * v2);
  }
};

}  // namespace qbb::test

#endif  // QBB_TEST_CLOSED_FORMS_HPP

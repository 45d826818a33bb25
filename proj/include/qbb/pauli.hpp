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

#ifndef QBB_PAULI_HPP
#define QBB_PAULI_HPP

#include "qbb/matrix.hpp"

namespace qbb {

inline CMat pauli_x() {
  CMat m(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

inline CMat pauli_y() {
  CMat m(2, 2);
  m(0, 1) = cplx{0.0, -1.0};
  m(1, 0) = cplx{0.0, 1.0};
  return m;
}

inline CMat pauli_z() {
  CMat m(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

// A kron B
inline CMat kron(const CMat& A, const CMat& B) {
  CMat K(A.rows() * B.rows(), A.cols() * B.cols());
  for (int ar = 0; ar < A.rows(); ++ar)
    for (int ac = 0; ac < A.cols(); ++ac) {
      const cplx a = A(ar, ac);
      if (a == cplx{}) continue;
      for (int br = 0; br < B.rows(); ++br)
        for (int bc = 0; bc < B.cols(); ++bc)
          K(ar * B.rows() + br, ac * B.cols() + bc) = a * B(br, bc);
    }
  return K;
}

}  // namespace qbb

#endif  // QBB_PAULI_HPP

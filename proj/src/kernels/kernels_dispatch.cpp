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

#include <cstdlib>
#include <cstring>
#include <mutex>

#include "qbb/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <cpuid.h>
#endif

namespace qbb::kern {

const Ops* avx2_ops();  // null when not built for this arch
const Ops* neon_ops();

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  unsigned eax = 0, ebx = 0, ecx = 0, edx = 0;
  if (!__get_cpuid_count(7, 0, &eax, &ebx, &ecx, &edx)) return false;
  const bool avx2 = (ebx & (1u << 5)) != 0;
  __get_cpuid(1, &eax, &ebx, &ecx, &edx);
  const bool fma = (ecx & (1u << 12)) != 0;
  return avx2 && fma;
#else
  return false;
#endif
}

const Ops* pick() {
  if (const char* env = std::getenv("QBB_KERNEL")) {
    if (std::strcmp(env, "scalar") == 0) return &scalar_ops();
    if (std::strcmp(env, "avx2") == 0 && avx2_ops() && cpu_has_avx2())
      return avx2_ops();
    if (std::strcmp(env, "neon") == 0 && neon_ops()) return neon_ops();
    // unknown or unavailable name: fall through to autodetect
  }
  if (avx2_ops() && cpu_has_avx2()) return avx2_ops();
  if (neon_ops()) return neon_ops();
  return &scalar_ops();
}

}  // namespace

const Ops& active() {
  static const Ops* selected = pick();
  return *selected;
}

std::vector<const Ops*> available() {
  std::vector<const Ops*> v{&scalar_ops()};
  if (avx2_ops() && cpu_has_avx2()) v.push_back(avx2_ops());
  if (neon_ops()) v.push_back(neon_ops());
  return v;
}

}  // namespace qbb::kern

// Copyright 2026 the sscsi authors
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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "sscsi/kernels.hpp"

namespace sscsi::kernels {

#ifndef SSCSI_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif

bool avx2_available() {
#if defined(SSCSI_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

namespace {

const KernelTable* choose_default() {
  const char* env = std::getenv("SSCSI_SIMD");
  if (env != nullptr && std::string(env) == "scalar") return &scalar_table();
  if (avx2_available()) return avx2_table();
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{choose_default()};
  return table;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void force_variant(const char* name) {
  const std::string want(name);
  if (want == "scalar") {
    current().store(&scalar_table(), std::memory_order_release);
  } else if (want == "avx2") {
    if (!avx2_available()) throw std::invalid_argument("AVX2 kernels are not available here");
    current().store(avx2_table(), std::memory_order_release);
  } else {
    throw std::invalid_argument("unknown kernel variant: " + want);
  }
}

}  // namespace sscsi::kernels

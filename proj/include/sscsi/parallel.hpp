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

#pragma once

#include <cstdint>
#include <functional>

namespace sscsi {

/// Process-wide worker count used by the row-parallel loops. Every loop
/// partitions its index range into fixed contiguous chunks and each index is
/// computed by exactly one worker, so results do not depend on the count.
void set_thread_count(int threads);
int thread_count();

/// Calls body(i) for i in [begin, end).
void parallel_for(std::int64_t begin, std::int64_t end,
                  const std::function<void(std::int64_t)>& body);

/// Calls body(chunk_begin, chunk_end, worker) on contiguous chunks.
void parallel_chunks(std::int64_t begin, std::int64_t end,
                     const std::function<void(std::int64_t, std::int64_t, int)>& body);

}  // namespace sscsi

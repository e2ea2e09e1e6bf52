// Copyright 2026 The cvlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CVLEARN_PARALLEL_H_
#define CVLEARN_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace cvlearn {

/// Process-wide cap on worker threads (0 = hardware concurrency).
void set_thread_limit(unsigned threads);
unsigned thread_limit();

/// Runs body(i) for i in [0, count). Each index must write only to its own
/// output slot; callers reduce in index order afterwards, which keeps results
/// independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace cvlearn

#endif  // CVLEARN_PARALLEL_H_

/* Copyright 2026 The silrender Authors.

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

     http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.*/

#ifndef SILRENDER_PARALLEL_H_
#define SILRENDER_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace silrender {

// 0 means "use std::thread::hardware_concurrency()".
int ResolveThreadCount(int requested);

// Calls fn(i) for every i in [0, n), spreading contiguous blocks of indices
// over at most `threads` workers. Results must not depend on the split: each
// index is expected to write only its own output slot. The first exception
// thrown by any worker is rethrown on the calling thread.
void ParallelFor(std::size_t n, int threads,
                 const std::function<void(std::size_t)>& fn);

}  // namespace silrender

#endif  // SILRENDER_PARALLEL_H_

// Copyright 2026 The Frame Lab Authors. All Rights Reserved.
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

#ifndef FRAME_LAB_PARALLEL_HPP_
#define FRAME_LAB_PARALLEL_HPP_

#include <functional>

#include "frame_lab/common.hpp"

namespace frame_lab {

/// Worker count: hardware concurrency, capped by the FRAME_LAB_THREADS environment
/// variable when it holds a positive integer.
int thread_count();

/// Calls body(i) for i in [0, n) over contiguous blocks, one block per worker. Results
/// must be written to per-index slots; the first exception by block order is rethrown.
void parallel_for(Index n, const std::function<void(Index)>& body);

}  // namespace frame_lab

#endif  // FRAME_LAB_PARALLEL_HPP_

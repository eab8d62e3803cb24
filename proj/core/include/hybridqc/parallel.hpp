// Copyright 2026 The hybridqc Authors
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

#include <cstddef>
#include <functional>
#include <vector>

namespace hqc {

// Worker count from HYBRIDQC_THREADS; defaults to the hardware concurrency.
std::size_t worker_count();

// Splits [0, n) into contiguous chunks, one per worker, and runs
// body(begin, end) on each. The first exception thrown by any chunk is
// rethrown on the calling thread after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

// Fixed block size for reductions. Block partial sums are combined pairwise in
// block order, so results do not depend on the number of workers.
inline constexpr std::size_t kReductionBlock = 4096;

// Folds [0, n) block by block (blocks run in parallel), then combines the
// block results pairwise: ((b0 + b1) + (b2 + b3)) + ...
template <class Acc, class Make, class Fold, class Combine>
Acc blocked_reduce(std::size_t n, Make make, Fold fold, Combine combine) {
    const std::size_t blocks = n == 0 ? 1 : (n + kReductionBlock - 1) / kReductionBlock;
    std::vector<Acc> partial;
    partial.reserve(blocks);
    for (std::size_t b = 0; b < blocks; ++b) partial.push_back(make());
    parallel_for(blocks, [&](std::size_t begin, std::size_t end) {
        for (std::size_t b = begin; b < end; ++b) {
            const std::size_t lo = b * kReductionBlock;
            const std::size_t hi = lo + kReductionBlock < n ? lo + kReductionBlock : n;
            fold(partial[b], lo, hi);
        }
    });
    for (std::size_t stride = 1; stride < blocks; stride *= 2) {
        for (std::size_t b = 0; b + stride < blocks; b += 2 * stride) {
            combine(partial[b], partial[b + stride]);
        }
    }
    return std::move(partial.front());
}

}  // namespace hqc

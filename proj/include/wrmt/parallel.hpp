// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace wrmt {

// Worker count from WRMT_THREADS (default 1). Invalid values fall back to 1.
int thread_count();

// Runs fn(i) for i in [0, count). Each index is handled by exactly one
// worker, so results written per index do not depend on the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace wrmt

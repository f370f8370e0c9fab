// Copyright 2026 The nmsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NMSIM_WORKER_POOL_HPP_
#define NMSIM_WORKER_POOL_HPP_

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace nmsim {

/// Fixed set of threads executing one chunked loop at a time. The calling
/// thread takes part in every loop, so `workers` counts it; workers == 1
/// means no extra threads at all. parallel_for returns only after every
/// chunk has finished, which makes each call a full barrier.
class WorkerPool {
 public:
  using RangeFn = std::function<void(std::size_t begin, std::size_t end)>;

  explicit WorkerPool(int workers);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  int workers() const noexcept { return workers_; }

  /// Runs fn over [0, n) in chunks of `chunk` items. The first exception
  /// thrown by any chunk is rethrown here; remaining chunks are skipped.
  void parallel_for(std::size_t n, std::size_t chunk, const RangeFn& fn);

 private:
  void worker_loop();
  void drain();

  int workers_;
  std::vector<std::thread> threads_;

  std::mutex mutex_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  std::size_t generation_ = 0;
  int pending_ = 0;
  bool stop_ = false;

  const RangeFn* job_ = nullptr;
  std::size_t n_ = 0;
  std::size_t chunk_ = 1;
  std::atomic<std::size_t> next_{0};
  std::exception_ptr error_;
  std::mutex error_mutex_;
};

}  // namespace nmsim

#endif  // NMSIM_WORKER_POOL_HPP_

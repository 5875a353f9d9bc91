// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <condition_variable>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace iga {

/// Fixed team of worker threads standing in for distributed-memory ranks.
/// run(fn) calls fn(rank) for every rank concurrently (rank 0 on the calling
/// thread) and returns when all have finished. An exception thrown by any
/// rank is rethrown on the caller; the lowest rank wins.
class WorkerTeam {
 public:
  explicit WorkerTeam(int workers);
  ~WorkerTeam();

  WorkerTeam(const WorkerTeam&) = delete;
  WorkerTeam& operator=(const WorkerTeam&) = delete;

  int size() const noexcept { return size_; }
  void run(const std::function<void(int)>& fn);

 private:
  void loop(int rank);

  int size_;
  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  const std::function<void(int)>* task_ = nullptr;
  unsigned long generation_ = 0;
  int pending_ = 0;
  bool stop_ = false;
  std::vector<std::exception_ptr> errors_;
};

}  // namespace iga

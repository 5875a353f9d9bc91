// Copyright 2026 The iga Authors.
// SPDX-License-Identifier: Apache-2.0

#include "iga/workers.hpp"

#include "iga/error.hpp"

namespace iga {

WorkerTeam::WorkerTeam(int workers) : size_(workers) {
  if (workers < 1) fail(ErrorCode::kParameter, "worker team: need at least one worker");
  errors_.resize(static_cast<size_t>(workers));
  threads_.reserve(static_cast<size_t>(workers - 1));
  for (int r = 1; r < workers; ++r) threads_.emplace_back([this, r] { loop(r); });
}

WorkerTeam::~WorkerTeam() {
  {
    std::lock_guard lock(mutex_);
    stop_ = true;
  }
  start_cv_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerTeam::loop(int rank) {
  unsigned long seen = 0;
  for (;;) {
    const std::function<void(int)>* task = nullptr;
    {
      std::unique_lock lock(mutex_);
      start_cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
      task = task_;
    }
    try {
      (*task)(rank);
    } catch (...) {
      errors_[static_cast<size_t>(rank)] = std::current_exception();
    }
    {
      std::lock_guard lock(mutex_);
      if (--pending_ == 0) done_cv_.notify_one();
    }
  }
}

void WorkerTeam::run(const std::function<void(int)>& fn) {
  for (auto& e : errors_) e = nullptr;
  if (size_ > 1) {
    {
      std::lock_guard lock(mutex_);
      task_ = &fn;
      pending_ = size_ - 1;
      ++generation_;
    }
    start_cv_.notify_all();
  }
  try {
    fn(0);
  } catch (...) {
    errors_[0] = std::current_exception();
  }
  if (size_ > 1) {
    std::unique_lock lock(mutex_);
    done_cv_.wait(lock, [&] { return pending_ == 0; });
    task_ = nullptr;
  }
  for (auto& e : errors_)
    if (e) std::rethrow_exception(e);
}

}  // namespace iga

#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <memory>
#include <optional>

#include "redukt/errors.hpp"

namespace redukt {

/// Resource caps for the automaton constructions. Exceeding any of them
/// raises ResourceLimitError; the checking layer turns that into UNKNOWN.
struct Limits {
  std::size_t automaton_state_cap = 1u << 20;
  std::size_t automaton_edge_cap = 1u << 23;
  std::size_t saturation_edge_cap = 1u << 23;
};

/// Cooperative cancellation handle. Default-constructed tokens never
/// cancel. Tokens form a chain: cancelling a parent cancels all children.
/// Long-running loops call poll() at state-exploration granularity.
class CancelToken {
public:
  CancelToken() = default;

  static CancelToken make() {
    CancelToken t;
    t.state_ = std::make_shared<State>();
    return t;
  }

  static CancelToken with_deadline(std::chrono::milliseconds budget) {
    CancelToken t = make();
    t.state_->deadline = std::chrono::steady_clock::now() + budget;
    return t;
  }

  /// A token cancelled whenever `parent` is, with its own flag on top.
  static CancelToken child_of(const CancelToken& parent) {
    CancelToken t = make();
    t.state_->parent = parent.state_;
    return t;
  }

  void cancel() const {
    if (state_)
      state_->flag.store(true, std::memory_order_relaxed);
  }

  bool cancelled() const {
    for (const State* s = state_.get(); s != nullptr; s = s->parent.get()) {
      if (s->flag.load(std::memory_order_relaxed))
        return true;
      if (s->deadline && std::chrono::steady_clock::now() >= *s->deadline)
        return true;
    }
    return false;
  }

  void poll() const {
    if (cancelled())
      throw CancelledError("operation cancelled");
  }

private:
  struct State {
    std::atomic<bool> flag{false};
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::shared_ptr<State> parent;
  };

  std::shared_ptr<State> state_;
};

} // namespace redukt

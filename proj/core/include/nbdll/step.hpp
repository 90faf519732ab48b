/*
 * Copyright (c) 2026, the nbdll authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef NBDLL_STEP_HPP_
#define NBDLL_STEP_HPP_

#include <cassert>
#include <coroutine>
#include <exception>
#include <type_traits>
#include <utility>
#include <variant>

namespace nbdll {

// A lazily-started coroutine task. The list operations are written as Step
// coroutines so that one transcription of the algorithm runs on both memory
// backends: the native-atomics backend services every cell access without
// suspending (the coroutine runs straight through), while the deterministic
// backend suspends at each shared access and lets the scheduler choose the
// interleaving.
//
// Awaiting a Step starts it via symmetric transfer; when it completes, its
// final awaiter transfers back to the continuation. Driver code outside a
// coroutine uses start()/done()/result().
template <class T>
class [[nodiscard]] Step {
  static_assert(!std::is_void_v<T>, "Step<void> is not used");

 public:
  struct promise_type;
  using Handle = std::coroutine_handle<promise_type>;

  struct promise_type {
    std::coroutine_handle<> continuation;
    std::variant<std::monostate, T, std::exception_ptr> result;

    Step get_return_object() { return Step(Handle::from_promise(*this)); }
    std::suspend_always initial_suspend() noexcept { return {}; }

    struct FinalAwaiter {
      bool await_ready() noexcept { return false; }
      std::coroutine_handle<> await_suspend(Handle h) noexcept {
        auto cont = h.promise().continuation;
        return cont ? cont : std::coroutine_handle<>(std::noop_coroutine());
      }
      void await_resume() noexcept {}
    };
    FinalAwaiter final_suspend() noexcept { return {}; }

    void return_value(T v) { result.template emplace<1>(std::move(v)); }
    void unhandled_exception() {
      result.template emplace<2>(std::current_exception());
    }
  };

  Step() = default;
  explicit Step(Handle h) : h_(h) {}
  Step(Step&& o) noexcept : h_(std::exchange(o.h_, nullptr)) {}
  Step& operator=(Step&& o) noexcept {
    if (this != &o) {
      destroy();
      h_ = std::exchange(o.h_, nullptr);
    }
    return *this;
  }
  Step(const Step&) = delete;
  Step& operator=(const Step&) = delete;
  ~Step() { destroy(); }

  // Awaiting from a parent coroutine: start the child, resume the parent on
  // completion.
  bool await_ready() const noexcept { return false; }
  std::coroutine_handle<> await_suspend(std::coroutine_handle<> parent) {
    h_.promise().continuation = parent;
    return h_;
  }
  T await_resume() { return take(); }

  // Driving from plain code.
  void start() {
    assert(h_ && !h_.done());
    h_.resume();
  }
  bool done() const { return !h_ || h_.done(); }
  T result() {
    assert(done());
    return take();
  }
  Handle handle() const { return h_; }

 private:
  T take() {
    auto& r = h_.promise().result;
    if (r.index() == 2) std::rethrow_exception(std::get<2>(r));
    assert(r.index() == 1);
    return std::move(std::get<1>(r));
  }
  void destroy() {
    if (h_) {
      h_.destroy();
      h_ = nullptr;
    }
  }

  Handle h_;
};

}  // namespace nbdll

#endif  // NBDLL_STEP_HPP_

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

#ifndef NBDLL_ARENA_HPP_
#define NBDLL_ARENA_HPP_

#include <atomic>
#include <cstddef>
#include <memory>
#include <mutex>
#include <new>
#include <type_traits>
#include <utility>
#include <vector>

namespace nbdll {

// Bump allocator for list nodes and descriptors. Nodes in a non-blocking list
// cannot be freed individually while the list is live (a stalled operation may
// still dereference them), so each list owns an arena and the whole arena is
// released when the list is destroyed, after all operations have quiesced.
//
// The fast path is a lock-free bump on the current chunk; chunk refill takes a
// mutex. Destructors are skipped for trivially destructible types and recorded
// otherwise (ghost builds embed arbitrary-precision values in nodes).
class Arena {
 public:
  explicit Arena(std::size_t chunkBytes = 1u << 20) : chunkBytes_(chunkBytes) {
    addChunk(chunkBytes_);
  }

  Arena(const Arena&) = delete;
  Arena& operator=(const Arena&) = delete;

  ~Arena() {
    for (auto it = dtors_.rbegin(); it != dtors_.rend(); ++it) it->fn(it->p);
  }

  void* allocate(std::size_t bytes, std::size_t align) {
    bytes = (bytes + align - 1) & ~(align - 1);
    for (;;) {
      Chunk* c = current_.load(std::memory_order_acquire);
      std::size_t off = c->used.fetch_add(bytes, std::memory_order_relaxed);
      if (off + bytes <= c->cap) return c->mem.get() + off;
      refill(c, bytes);
    }
  }

  template <class T, class... Args>
  T* create(Args&&... args) {
    void* p = allocate(sizeof(T), alignof(T));
    T* t = ::new (p) T(std::forward<Args>(args)...);
    if constexpr (!std::is_trivially_destructible_v<T>) {
      std::lock_guard<std::mutex> lk(mu_);
      dtors_.push_back(Dtor{t, [](void* q) { static_cast<T*>(q)->~T(); }});
    }
    return t;
  }

  std::size_t bytesAllocated() const {
    std::lock_guard<std::mutex> lk(mu_);
    std::size_t total = 0;
    for (const auto& c : chunks_) total += c->cap;
    return total;
  }

 private:
  struct Chunk {
    std::unique_ptr<std::byte[]> mem;
    std::atomic<std::size_t> used{0};
    std::size_t cap = 0;
  };
  struct Dtor {
    void* p;
    void (*fn)(void*);
  };

  void addChunk(std::size_t cap) {
    auto c = std::make_unique<Chunk>();
    c->mem = std::make_unique<std::byte[]>(cap);
    c->cap = cap;
    chunks_.push_back(std::move(c));
    current_.store(chunks_.back().get(), std::memory_order_release);
  }

  void refill(Chunk* full, std::size_t need) {
    std::lock_guard<std::mutex> lk(mu_);
    if (current_.load(std::memory_order_relaxed) != full) return;  // raced
    addChunk(std::max(chunkBytes_, 2 * need));
  }

  std::size_t chunkBytes_;
  mutable std::mutex mu_;
  std::vector<std::unique_ptr<Chunk>> chunks_;
  std::vector<Dtor> dtors_;
  std::atomic<Chunk*> current_{nullptr};
};

}  // namespace nbdll

#endif  // NBDLL_ARENA_HPP_

#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <memory>
#include <stdexcept>

namespace csys {

// Append-only storage whose elements never move. Appends must be
// serialized by the caller; reads of already published indices need no
// lock, since the chunk directory is allocated once up front.
template <class T, size_t ChunkBits = 12, size_t MaxChunks = 4096>
class StableVector {
 public:
  static constexpr size_t kChunk = size_t{1} << ChunkBits;

  StableVector() : chunks_(new std::unique_ptr<T[]>[MaxChunks]) {}

  size_t size() const { return size_.load(std::memory_order_acquire); }

  const T& operator[](size_t i) const { return chunks_[i >> ChunkBits][i & (kChunk - 1)]; }
  T& operator[](size_t i) { return chunks_[i >> ChunkBits][i & (kChunk - 1)]; }

  size_t push_back(T v) {
    size_t i = size_.load(std::memory_order_relaxed);
    size_t c = i >> ChunkBits;
    if (c >= MaxChunks) throw std::length_error("StableVector capacity exhausted");
    if (!chunks_[c]) chunks_[c].reset(new T[kChunk]);
    chunks_[c][i & (kChunk - 1)] = std::move(v);
    size_.store(i + 1, std::memory_order_release);
    return i;
  }

 private:
  std::unique_ptr<std::unique_ptr<T[]>[]> chunks_;
  std::atomic<size_t> size_{0};
};

}  // namespace csys

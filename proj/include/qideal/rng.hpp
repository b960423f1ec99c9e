#pragma once

// Deterministic randomness. All randomized behaviour in the library goes
// through this wrapper around std::mt19937_64, whose output sequence is
// fixed by the C++ standard, with rejection-based range reduction so the
// draws are identical across platforms and standard libraries.

#include <cstdint>
#include <random>

#include "qideal/scalars.hpp"

namespace qideal {

class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next() { return gen_(); }

  // Uniform in [0, n).
  uint64_t below(uint64_t n) {
    QIDEAL_CHECK(n > 0, "Rng::below(0)");
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do { x = gen_(); } while (x >= limit);
    return x % n;
  }

  // Uniform in [0, n) for big n.
  Int below(const Int& n) {
    QIDEAL_CHECK(n > 0, "Rng::below(0)");
    size_t bits = bit_length(n - 1);
    while (true) {
      Int x = 0;
      for (size_t got = 0; got < bits; got += 64) x = (x << 64) | Int(gen_());
      x >>= (64 - bits % 64) % 64;
      if (x < n) return x;
    }
  }

  bool coin() { return (gen_() & 1) != 0; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(uint64_t(i))]);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace qideal

#pragma once
// Deterministic seeded sampling of rational values; identical seeds give
// identical streams on every platform.

#include <random>

#include "billiards/scalar.hpp"

namespace billiards {

class SampleGen {
 public:
  explicit SampleGen(unsigned long long seed) : eng_(seed) {}

  // Uniform-ish integer in [lo, hi]; plain modulo mapping so the stream is
  // fixed by the mt19937_64 specification alone.
  long integer(long lo, long hi) {
    unsigned long long span = static_cast<unsigned long long>(hi - lo + 1);
    return lo + static_cast<long>(eng_() % span);
  }

  // Nonzero rational with |num| <= h, 1 <= den <= h.
  BigRat rational(long h, bool nonzero = false) {
    for (;;) {
      long num = integer(-h, h);
      long den = integer(1, h);
      if (nonzero && num == 0) continue;
      return BigRat(num, den);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace billiards

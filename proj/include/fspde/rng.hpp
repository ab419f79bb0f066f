#pragma once

#include <cstdint>
#include <random>

namespace fspde {

// Deterministic stream derivation: mixes (base, a, b) into a 64-bit seed so
// that streams for different (mode, replication) pairs can be generated in any
// order, or in parallel, with identical results.
std::uint64_t derive_stream(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

// Standard normal generator over a fully specified engine (mt19937_64 +
// Box-Muller), so sequences are reproducible across standard libraries.
class NormalStream {
  public:
    explicit NormalStream(std::uint64_t seed) : gen_(seed) {}

    double operator()();

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace fspde

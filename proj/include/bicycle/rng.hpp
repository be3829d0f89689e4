#pragma once

#include <cstdint>
#include <random>

namespace bicycle {

// Deterministic RNG used everywhere randomness is needed; seeds are CLI/test inputs.
class Rng {
  public:
    explicit Rng(uint64_t seed = 0x9e3779b97f4a7c15ull) : eng_(seed) {}

    uint64_t next() { return eng_(); }
    // uniform in [0, n)
    uint64_t below(uint64_t n) {
        std::uniform_int_distribution<uint64_t> d(0, n - 1);
        return d(eng_);
    }
    double uniform() {
        std::uniform_real_distribution<double> d(0.0, 1.0);
        return d(eng_);
    }
    bool coin() { return eng_() & 1; }

    // independent child stream (for parallel trials)
    Rng spawn(uint64_t stream) {
        uint64_t s = eng_();
        return Rng(s ^ (0x9e3779b97f4a7c15ull * (stream + 1)));
    }

    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
};

}  // namespace bicycle

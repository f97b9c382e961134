/**
 * Deterministic random number generation.
 *
 * All randomized routines (irrep extraction, cycle-cover tie breaking, the
 * projector search in estimate_hq) draw from this generator so that a fixed
 * seed reproduces every output bit-for-bit across platforms.  Gaussians are
 * produced by an explicit Box-Muller transform instead of
 * std::normal_distribution, whose output is implementation-defined.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace qexpand {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (deterministic across platforms).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  /// Complex standard normal (real and imaginary parts independent N(0,1)).
  std::complex<double> gaussian_complex() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t integer(std::uint64_t bound) {
    // Rejection-free modulo is fine here: bound is tiny next to 2^64 in all
    // our uses, so the bias is far below any tolerance in play.
    return gen_() % bound;
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace qexpand

#ifndef ORDEPTH_RNG_HPP_
#define ORDEPTH_RNG_HPP_

#include <cmath>
#include <cstdint>

#include "ordepth/error.hpp"

namespace ordepth {

namespace detail {

// SplitMix64 finalizer (Vigna / Steele et al.). Full-avalanche 64-bit mix.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

// Counter-based generator: the i-th output of a stream with key k is
// mix64(k + i * GAMMA) where GAMMA is the 64-bit golden-ratio constant and
// mix64 is the SplitMix64 finalizer. State is (key, counter) only, so the
// stream depends on nothing but the seed and the number of draws made.
//
// split(s) derives the key of an independent child stream as
// mix64(key ^ mix64(s + GAMMA)); child streams never share outputs with the
// parent or with siblings for distinct s. One Rng per worker; instances are
// cheap values and are not meant to be shared.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(detail::mix64(seed)) {}

  Rng split(std::uint64_t stream) const {
    Rng child(0);
    child.key_ = detail::mix64(key_ ^ detail::mix64(stream + kGamma));
    child.counter_ = 0;
    return child;
  }

  std::uint64_t next_u64() { return detail::mix64(key_ + (counter_++) * kGamma); }

  // Uniform in [0,1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    if (!(lo < hi)) throw ArgumentError("Rng::uniform: need lo < hi");
    double v = lo + next_double() * (hi - lo);
    if (v >= hi) v = std::nextafter(hi, lo);  // rounding can land on hi
    return v;
  }

  // Standard normal via Box-Muller; consumes exactly two draws per call.
  double normal() {
    double u1 = next_double();
    double u2 = next_double();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // Uniform integer in [0, n). 128-bit multiply keeps it platform-exact.
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) throw ArgumentError("Rng::next_below: n must be positive");
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  bool bernoulli(double p) { return next_double() < p; }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr double kPi = 3.141592653589793238462643383279502884;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace ordepth

#endif  // ORDEPTH_RNG_HPP_

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace nilprod {

// Exact arithmetic everywhere: arbitrary-precision integers and reduced
// fractions.  No floating point is used anywhere in this library.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// All domain errors carry a stable code ("DomainMismatch", "NotIdeal", ...)
// that tests and the CLI match on, plus a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw Error(code, msg);
}

// Deterministic splittable RNG for the randomized suites.  A thin xoshiro-like
// mix over a 64-bit counter; avoids std::uniform_int_distribution so that the
// produced streams are pinned by this code alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed * 0x9E3779B97F4A7C15ULL + 1) {}

  std::uint64_t next() {
    // splitmix64 step
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  // uniform in [lo, hi] inclusive
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  Rng split(std::uint64_t stream) const {
    return Rng(state_ ^ (0xD1B54A32D192ED03ULL * (stream + 0x632BE59BD9B4E019ULL)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace nilprod

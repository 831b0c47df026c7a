#pragma once

#include <array>
#include <cstdint>

namespace gausslab {

// Order-independent summation of doubles.
//
// Every finite double is a multiple of 2^-1074, so the running total is held
// exactly as a long fixed-point integer split into 32-bit digits (each digit
// kept in an int64 slot so carries can be deferred).  The final value() is the
// exact sum rounded once to nearest-even.  Two accumulators that received the
// same multiset of terms, in any order and across any sharding, produce
// bit-identical results.
class ExactSum {
 public:
  ExactSum() { digits_.fill(0); }

  void add(double v);
  ExactSum& operator+=(double v) {
    add(v);
    return *this;
  }
  ExactSum& operator+=(const ExactSum& other);

  // Correctly rounded sum of everything added so far.
  double value() const;

  bool is_zero() const;
  std::uint64_t count() const { return count_; }

 private:
  static constexpr int kDigits = 72;
  static constexpr int kOffset = 1088;  // bit position of 2^0 is kOffset

  void normalize() const;

  mutable std::array<std::int64_t, kDigits> digits_;
  mutable std::uint32_t pending_ = 0;
  std::uint64_t count_ = 0;
};

}  // namespace gausslab

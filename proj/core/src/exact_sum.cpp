#include "gausslab/exact_sum.hpp"

#include <bit>
#include <cmath>

#include "gausslab/errors.hpp"

namespace gausslab {

namespace {
using u128 = unsigned __int128;
constexpr std::int64_t kMask = 0xffffffffLL;
}  // namespace

void ExactSum::add(double v) {
  ++count_;
  if (v == 0.0) return;
  if (!std::isfinite(v)) throw DomainError("ExactSum: non-finite term");

  const auto bits = std::bit_cast<std::uint64_t>(v);
  const bool negative = (bits >> 63) != 0;
  const int biased = static_cast<int>((bits >> 52) & 0x7ff);
  std::uint64_t mantissa = bits & ((std::uint64_t{1} << 52) - 1);
  int exponent = -1074;
  if (biased != 0) {
    mantissa |= std::uint64_t{1} << 52;
    exponent = biased - 1075;
  }

  const int pos = exponent + kOffset;
  const int idx = pos >> 5;
  const int shift = pos & 31;
  const u128 t = static_cast<u128>(mantissa) << shift;
  const auto c0 = static_cast<std::int64_t>(t & kMask);
  const auto c1 = static_cast<std::int64_t>((t >> 32) & kMask);
  const auto c2 = static_cast<std::int64_t>((t >> 64) & kMask);
  if (negative) {
    digits_[idx] -= c0;
    digits_[idx + 1] -= c1;
    digits_[idx + 2] -= c2;
  } else {
    digits_[idx] += c0;
    digits_[idx + 1] += c1;
    digits_[idx + 2] += c2;
  }
  if (++pending_ >= (1u << 30)) normalize();
}

void ExactSum::normalize() const {
  for (int i = 0; i + 1 < kDigits; ++i) {
    const std::int64_t carry = digits_[i] >> 32;
    digits_[i] -= carry * (std::int64_t{1} << 32);
    digits_[i + 1] += carry;
  }
  pending_ = 0;
}

ExactSum& ExactSum::operator+=(const ExactSum& other) {
  normalize();
  other.normalize();
  for (int i = 0; i < kDigits; ++i) digits_[i] += other.digits_[i];
  count_ += other.count_;
  normalize();
  return *this;
}

bool ExactSum::is_zero() const {
  normalize();
  for (auto d : digits_)
    if (d != 0) return false;
  return true;
}

double ExactSum::value() const {
  normalize();
  std::array<std::int64_t, kDigits> mag = digits_;
  const bool negative = mag[kDigits - 1] < 0;
  if (negative) {
    for (auto& d : mag) d = -d;
    for (int i = 0; i + 1 < kDigits; ++i) {
      const std::int64_t carry = mag[i] >> 32;
      mag[i] -= carry * (std::int64_t{1} << 32);
      mag[i + 1] += carry;
    }
  }

  int top = kDigits - 1;
  while (top >= 0 && mag[top] == 0) --top;
  if (top < 0) return 0.0;

  const int lo = top >= 2 ? top - 2 : 0;
  u128 window = 0;
  for (int j = top; j >= lo; --j) window = (window << 32) | static_cast<u128>(mag[j]);
  bool sticky = false;
  for (int j = 0; j < lo; ++j) sticky = sticky || mag[j] != 0;

  const int base = 32 * lo - kOffset;
  const auto hi64 = static_cast<std::uint64_t>(window >> 64);
  const int nbits = hi64 != 0 ? 128 - std::countl_zero(hi64)
                              : 64 - std::countl_zero(static_cast<std::uint64_t>(window));
  int shift = nbits - 53;
  if (base + shift < -1074) shift = -1074 - base;

  double result;
  if (shift <= 0) {
    result = std::ldexp(static_cast<double>(window), base);
  } else {
    u128 q = window >> shift;
    const u128 rem = window & ((u128{1} << shift) - 1);
    const u128 half = u128{1} << (shift - 1);
    const bool up = rem > half || (rem == half && (sticky || (q & 1) != 0));
    if (up) ++q;
    result = std::ldexp(static_cast<double>(q), base + shift);
  }
  return negative ? -result : result;
}

}  // namespace gausslab

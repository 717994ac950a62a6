#include "lagcfg/rng.hpp"

#include "lagcfg/errors.hpp"

namespace lagcfg {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t Rng::next_u64() { return splitmix(seed_ ^ splitmix(counter_++)); }

long Rng::uniform(long lo, long hi) {
  if (hi < lo) throw Error(ErrorCode::RangeError, "empty integer range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return lo + static_cast<long>(v % span);
}

long Rng::uniform_nonzero(long lo, long hi) {
  if (lo == 0 && hi == 0) throw Error(ErrorCode::RangeError, "range contains only zero");
  long v;
  do {
    v = uniform(lo, hi);
  } while (v == 0);
  return v;
}

double Rng::uniform_real(double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(next_u64() >> 11) * 0x1.0p-53);
}

Rng Rng::split(std::uint64_t stream) const { return Rng(splitmix(seed_ ^ splitmix(~stream))); }

}  // namespace lagcfg

#include "retrodict/random.hpp"

namespace retrodict {

std::uint64_t mix64(std::uint64_t x) noexcept {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Engine make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t state = mix64(seed);
  for (const auto component : path) {
    state = mix64(state ^ mix64(component + 0x632be59bd9b4e019ULL));
  }
  return Engine(state);
}

}  // namespace retrodict

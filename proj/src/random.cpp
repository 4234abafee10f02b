#include "papuf/random.hpp"

namespace papuf {

std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t h = mix64(parent ^ 0x5eed5eed5eed5eedULL);
    for (std::uint64_t v : path) h = mix64(h ^ mix64(v + 0x632be59bd9b4e019ULL));
    return h;
}

} // namespace papuf

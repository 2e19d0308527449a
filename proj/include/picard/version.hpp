#ifndef PICARD_VERSION_HPP
#define PICARD_VERSION_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace picard {

inline constexpr const char* kVersion = "0.1.0";

/// FNV-1a over raw bytes; used to stamp reports with the instance they ran on.
inline std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    char buf[17];
    static const char* hexd = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hexd[h & 0xF];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf, 16);
}

} // namespace picard

#endif

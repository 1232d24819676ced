#ifndef XPMLAB_VERSION_HPP
#define XPMLAB_VERSION_HPP

namespace xpmlab {
inline constexpr const char* kVersion = "0.1.0";
}

#endif // XPMLAB_VERSION_HPP

#ifndef OVALLAB_VERSION_HPP
#define OVALLAB_VERSION_HPP

namespace ovallab {
inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "ovallab";
}  // namespace ovallab

#endif

#pragma once

#include <sodium.h>

#include <stdexcept>

namespace rlnc_das::detail {

inline void ensure_sodium() {
  static const bool ready = [] {
    if (sodium_init() < 0) throw std::runtime_error("libsodium failed to initialize");
    return true;
  }();
  (void)ready;
}

}  // namespace rlnc_das::detail

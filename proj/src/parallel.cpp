#include "nbrisk/parallel.hpp"

#include <cstdlib>
#include <string>

namespace nbrisk {

std::size_t default_jobs() {
  if (const char* env = std::getenv("NBRISK_JOBS")) {
    try {
      const long value = std::stol(env);
      if (value > 0) return static_cast<std::size_t>(value);
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace nbrisk

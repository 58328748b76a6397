#include "modlab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace modlab {

int worker_count() {
  if (const char* env = std::getenv("MODULUS_LAB_WORKERS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace modlab

#pragma once

#include <cstdlib>
#include <string>

namespace specsub {

// Process-wide size caps guarding the dense algorithms. The environment
// variable SPECSUB_SIZE_CAP, when set to a positive integer, overrides all
// vertex caps at startup. Tests may adjust the caps directly.
struct SizeCaps {
  int matrix_tree = 400;       // exact spanning-tree elimination
  int eigensolve = 2000;       // dense symmetric eigendecomposition
  int walk_oracle = 2000;      // per-target hitting-time linear solves
  int iterate_vertices = 20000;  // iterated transform output size
};

inline SizeCaps& size_caps() {
  static SizeCaps caps = [] {
    SizeCaps c;
    if (const char* env = std::getenv("SPECSUB_SIZE_CAP")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v > 0) {
        c.matrix_tree = c.eigensolve = c.walk_oracle = static_cast<int>(v);
        c.iterate_vertices = static_cast<int>(v);
      }
    }
    return c;
  }();
  return caps;
}

}  // namespace specsub

#pragma once

#include <stdexcept>
#include <string>

namespace aext {

// Raised whenever a request would need data past the cutoffs or past the
// per-bidegree cost budget. Callers either surface it (CLI exit 3) or shrink
// their range and report the gap; nothing silently returns partial data.
struct Truncated : std::runtime_error {
  int hom, adams;
  Truncated(int n, int s, const std::string& why)
      : std::runtime_error("truncated at bidegree (" + std::to_string(n) + ", -" +
                           std::to_string(s) + "): " + why),
        hom(n), adams(s) {}
};

}  // namespace aext

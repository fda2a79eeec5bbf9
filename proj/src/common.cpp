#include "cumsense/common.hpp"

#include <cstdio>

namespace cumsense {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace cumsense

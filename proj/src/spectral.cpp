#include "permgrid/spectral.hpp"

#include <cstdio>

namespace permgrid {

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

}  // namespace permgrid

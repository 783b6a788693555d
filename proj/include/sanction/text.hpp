#ifndef SANCTION_TEXT_HPP
#define SANCTION_TEXT_HPP

#include <cstdio>
#include <string>

namespace sanction {

// Fixed 9-significant-digit formatting so repeated runs produce byte
// identical output.
inline std::string fmt9(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace sanction

#endif

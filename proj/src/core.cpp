#include "refinemon/core.hpp"

#include <sstream>

namespace refinemon {

std::string to_string(const Element& x) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? "," : "") << x(i);
  os << ')';
  return os.str();
}

}  // namespace refinemon

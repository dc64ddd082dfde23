#include "abem/matrix.hpp"

#include <cstdio>
#include <ostream>

namespace abem {

void DenseSymMatrix::save(std::ostream& os) const {
  char buf[64];
  os << n_ << "\n";
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", (*this)(i, j));
      os << buf << (j + 1 == n_ ? "\n" : " ");
    }
  }
}

}  // namespace abem

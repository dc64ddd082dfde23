#ifndef ABEM_MATRIX_HPP
#define ABEM_MATRIX_HPP

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace abem {

/// Dense symmetric matrix, full row-major storage. Assembly fills each
/// unordered pair once and mirrors it, so symmetry is exact.
class DenseSymMatrix {
 public:
  DenseSymMatrix() = default;
  explicit DenseSymMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set_sym(std::size_t i, std::size_t j, double v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }
  const double* data() const { return data_.data(); }
  double* data() { return data_.data(); }

  /// Plain-text export: dimension header, one row per line.
  void save(std::ostream& os) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

}  // namespace abem

#endif

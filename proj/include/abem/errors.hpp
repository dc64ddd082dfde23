#ifndef ABEM_ERRORS_HPP
#define ABEM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace abem {

struct DegenerateCurve : std::runtime_error {
  explicit DegenerateCurve(const std::string& msg) : std::runtime_error(msg) {}
};

struct SmoothComponentTooCoarse : std::runtime_error {
  explicit SmoothComponentTooCoarse(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotAUniformRefinement : std::runtime_error {
  explicit NotAUniformRefinement(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotSPD : std::runtime_error {
  explicit NotSPD(const std::string& msg) : std::runtime_error(msg) {}
};

struct IncompatibleRhs : std::runtime_error {
  explicit IncompatibleRhs(const std::string& msg) : std::runtime_error(msg) {}
};

struct AllIndicatorsZero : std::runtime_error {
  explicit AllIndicatorsZero(const std::string& msg) : std::runtime_error(msg) {}
};

struct QuadratureNonConvergence : std::runtime_error {
  explicit QuadratureNonConvergence(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonMonotoneInput : std::runtime_error {
  explicit NonMonotoneInput(const std::string& msg) : std::runtime_error(msg) {}
};

struct TooFewRows : std::runtime_error {
  explicit TooFewRows(const std::string& msg) : std::runtime_error(msg) {}
};

struct ReferenceUnavailable : std::runtime_error {
  explicit ReferenceUnavailable(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace abem

#endif

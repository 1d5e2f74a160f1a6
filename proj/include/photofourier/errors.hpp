#ifndef PHOTOFOURIER_ERRORS_HPP
#define PHOTOFOURIER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace photofourier {

struct SeparationViolation : std::runtime_error {
  explicit SeparationViolation(const std::string& msg) : std::runtime_error(msg) {}
};

struct WindowOutOfBounds : std::runtime_error {
  explicit WindowOutOfBounds(const std::string& msg) : std::runtime_error(msg) {}
};

struct Infeasible : std::runtime_error {
  explicit Infeasible(const std::string& msg) : std::runtime_error(msg) {}
};

struct StepOutOfRange : std::out_of_range {
  explicit StepOutOfRange(const std::string& msg) : std::out_of_range(msg) {}
};

struct LengthMismatch : std::runtime_error {
  explicit LengthMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

struct ShapeMismatch : std::runtime_error {
  explicit ShapeMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateScale : std::runtime_error {
  explicit DegenerateScale(const std::string& msg) : std::runtime_error(msg) {}
};

struct DepthExceeded : std::runtime_error {
  explicit DepthExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotADivisor : std::runtime_error {
  explicit NotADivisor(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidCount : std::runtime_error {
  explicit InvalidCount(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidInput : std::invalid_argument {
  explicit InvalidInput(const std::string& msg) : std::invalid_argument(msg) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnknownNetwork : std::runtime_error {
  explicit UnknownNetwork(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace photofourier

#endif

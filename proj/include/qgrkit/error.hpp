#pragma once

#include <stdexcept>
#include <string>

namespace qgrkit {

enum class ErrorKind {
  kInvalidParameter,
  kInvalidInput,
  kInvalidMap,
  kNotApplicable,
  kStabilizationNotReached,
  kOracleDisagreement,
  kNotModuleRepresentable,
  kInvalidIndex,
  kLiftFailure,
  kParse,
};

const char* to_string(ErrorKind kind);

class QgrError : public std::runtime_error {
 public:
  QgrError(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse failures carry the offending character offset.
class ParseError : public QgrError {
 public:
  ParseError(const std::string& what, size_t position)
      : QgrError(ErrorKind::kParse, what + " at position " + std::to_string(position)), position_(position) {}
  size_t position() const { return position_; }

 private:
  size_t position_;
};

}  // namespace qgrkit

#pragma once

#include <stdexcept>
#include <string>

namespace mvd {

// Exit-code contract shared with the CLI: code 2 = malformed input or bad
// parameters, code 1 = a validation check or certified claim failed.
struct Error : std::runtime_error {
  int exit_code;
  Error(const std::string& msg, int code) : std::runtime_error(msg), exit_code(code) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error("parse error: " + m, 2) {}
};
struct ValidationError : Error {
  explicit ValidationError(const std::string& m) : Error("validation error: " + m, 1) {}
};
struct ZeroTotalWeight : ValidationError {
  ZeroTotalWeight() : ValidationError("profile has zero total weight") {}
};
struct DimensionMismatch : ValidationError {
  explicit DimensionMismatch(const std::string& m) : ValidationError("dimension mismatch: " + m) {}
};
struct BadParams : Error {
  explicit BadParams(const std::string& m) : Error("bad parameters: " + m, 2) {}
};
struct BadK : BadParams {
  explicit BadK(const std::string& m) : BadParams("k " + m) {}
};
struct BadN : BadParams {
  explicit BadN(const std::string& m) : BadParams("n " + m) {}
};
struct BadDomain : BadParams {
  explicit BadDomain(const std::string& m) : BadParams("argument outside domain: " + m) {}
};
struct BadEpsilon : BadParams {
  explicit BadEpsilon(const std::string& m) : BadParams("epsilon " + m) {}
};
struct BadPositions : BadParams {
  explicit BadPositions(const std::string& m) : BadParams("position set " + m) {}
};
struct UnknownRule : Error {
  explicit UnknownRule(const std::string& m) : Error("unknown rule: " + m, 2) {}
};
struct NotKEntry : BadParams {
  explicit NotKEntry(const std::string& m) : BadParams("rule is not k-entry: " + m) {}
};
struct CapExceeded : BadParams {
  explicit CapExceeded(const std::string& m) : BadParams("size cap exceeded: " + m) {}
};

}  // namespace mvd

#pragma once

#include <stdexcept>
#include <string>

namespace knotcurv {

enum class ErrorCode {
    invalid_argument = 1,
    invalid_curve = 2,
    self_intersection = 3,
    precondition = 4,
    parse = 5,
    io = 6,
};

/// All library failures are reported through this exception; the C API
/// maps ErrorCode onto its status enum.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace knotcurv

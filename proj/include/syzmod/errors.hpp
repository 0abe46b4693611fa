#pragma once

#include <stdexcept>
#include <string>

namespace syzmod {

/// Every error raised by the library carries a category that the CLI maps to
/// an exit code.
enum class ErrorKind {
    Usage,         // malformed input, violated precondition
    Unknown,       // a verdict is blocked by an undetermined dimension
    Inconsistent,  // contradictory dimension data
    Internal,      // an internal consistency assertion failed
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

/// Operands live in different rings, or an expression is structurally malformed.
class StructuralError : public Error {
  public:
    explicit StructuralError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

class PreconditionError : public Error {
  public:
    explicit PreconditionError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

class ParseError : public Error {
  public:
    explicit ParseError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

/// The requested computation needs data the variety or bundle does not carry.
class UnsupportedError : public Error {
  public:
    explicit UnsupportedError(const std::string& what) : Error(ErrorKind::Unknown, what) {}
};

class UnknownBlockedError : public Error {
  public:
    explicit UnknownBlockedError(const std::string& what) : Error(ErrorKind::Unknown, what) {}
};

/// Raised by the dimension solver; names the slot and the rule that fired.
class InconsistencyError : public Error {
  public:
    InconsistencyError(std::string slot, std::string rule, const std::string& detail)
        : Error(ErrorKind::Inconsistent, slot + ": " + rule + ": " + detail),
          slot_(std::move(slot)),
          rule_(std::move(rule)) {}
    const std::string& slot() const noexcept { return slot_; }
    const std::string& rule() const noexcept { return rule_; }

  private:
    std::string slot_;
    std::string rule_;
};

class InternalError : public Error {
  public:
    explicit InternalError(const std::string& what) : Error(ErrorKind::Internal, what) {}
};

inline int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Usage: return 1;
        case ErrorKind::Unknown: return 2;
        case ErrorKind::Inconsistent: return 3;
        case ErrorKind::Internal: return 4;
    }
    return 4;
}

}  // namespace syzmod

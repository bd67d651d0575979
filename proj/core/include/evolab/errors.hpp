#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace evolab {

// Exit-code contract shared by the library and the CLI:
// 0 ok, 1 I/O, 2 invalid spec or capability mismatch, 3 budget, 4 verification failure.
enum class ErrorKind { io = 1, spec = 2, budget = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

class IoError : public Error {
 public:
  explicit IoError(std::string message) : Error(ErrorKind::io, std::move(message)) {}
};

class SpecError : public Error {
 public:
  explicit SpecError(std::string message) : Error(ErrorKind::spec, std::move(message)) {}
};

// Asking a family for an operation it does not support (e.g. enumeration of an
// implicit family, or a comparator it cannot evaluate exactly).
class CapabilityError : public SpecError {
 public:
  explicit CapabilityError(std::string message) : SpecError(std::move(message)) {}
};

class BudgetError : public Error {
 public:
  BudgetError(std::string message, std::uint64_t required, std::uint64_t budget)
      : Error(ErrorKind::budget,
              message + " (required " + std::to_string(required) + ", budget " +
                  std::to_string(budget) + ")"),
        required_(required),
        budget_(budget) {}

  // For enumeration guards this is the attempt counter at the point the budget
  // tripped; for expert construction it is the exact number of experts needed.
  std::uint64_t required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

}  // namespace evolab

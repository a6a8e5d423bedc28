#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ivt {

// Base class for every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class InvalidTolerance : public Error {
 public:
  explicit InvalidTolerance(const std::string& epsilon)
      : Error("epsilon must be positive, got " + epsilon) {}
};

class InvalidWeight : public Error {
 public:
  explicit InvalidWeight(const std::string& d)
      : Error("weight must lie in [0, 1], got " + d) {}
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class SignPreconditionViolated : public Error {
 public:
  SignPreconditionViolated(std::string f_a, std::string f_b)
      : Error("sign precondition f(a) < 0 < f(b) violated: f(a) = " + f_a +
              ", f(b) = " + f_b),
        f_a_(std::move(f_a)),
        f_b_(std::move(f_b)) {}

  const std::string& f_a() const { return f_a_; }
  const std::string& f_b() const { return f_b_; }

 private:
  std::string f_a_;
  std::string f_b_;
};

class EvalError : public Error {
 public:
  EvalError(std::string x, std::string path)
      : Error("division by zero evaluating f at x = " + x + " (node " + path +
              ")"),
        x_(std::move(x)),
        path_(std::move(path)) {}

  const std::string& x() const { return x_; }
  const std::string& path() const { return path_; }

 private:
  std::string x_;
  std::string path_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected,
             const std::string& found);

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class BackendNotExact : public Error {
 public:
  BackendNotExact()
      : Error("operation requires a trace computed with the exact backend") {}
};

class PlotError : public Error {
 public:
  using Error::Error;
};

class TraceFormatError : public Error {
 public:
  TraceFormatError(std::size_t line, const std::string& what)
      : Error("trace line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ivt

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sketchlevel {

/// Base of every error raised by the pipeline.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or truncated image bytes.
class DecodeError : public Error {
public:
  DecodeError(std::size_t offset, const std::string& what)
      : Error("decode error at byte " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

class FormatError : public Error {
public:
  using Error::Error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

/// A precondition stated by an operation's contract was violated by the caller.
class ContractError : public Error {
public:
  using Error::Error;
};

/// The generated level has more blocks than the configured cap.
class BudgetError : public Error {
public:
  BudgetError(std::size_t count, std::size_t cap)
      : Error("level needs " + std::to_string(count) + " blocks, over the max_blocks cap of " +
              std::to_string(cap)),
        count_(count), cap_(cap) {}
  std::size_t count() const noexcept { return count_; }
  std::size_t cap() const noexcept { return cap_; }

private:
  std::size_t count_;
  std::size_t cap_;
};

/// Malformed XML. Line and column are 1-based.
class SyntaxError : public Error {
public:
  SyntaxError(int line, int column, const std::string& what)
      : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

/// Well-formed XML that does not follow the level schema.
class SchemaError : public Error {
public:
  SchemaError(std::string element, const std::string& what)
      : Error("schema error in <" + element + ">: " + what), element_(std::move(element)) {}
  const std::string& element() const noexcept { return element_; }

private:
  std::string element_;
};

class ModelError : public Error {
public:
  using Error::Error;
};

}  // namespace sketchlevel

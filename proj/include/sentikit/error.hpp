#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sentikit {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input in a line-oriented file (lexicon, dataset, annotations).
/// `line()` is 1-based; 0 means the location is unknown.
class parse_error : public error {
  public:
    parse_error(const std::string &what, std::size_t line = 0) :
        error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_{ line } {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Well-formed input that violates a domain invariant.
class data_error : public error {
  public:
    using error::error;
};

/// Filesystem or network failure.
class io_error : public error {
  public:
    using error::error;
};

}  // namespace sentikit

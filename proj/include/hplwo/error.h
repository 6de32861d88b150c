#ifndef HPLWO_ERROR_H
#define HPLWO_ERROR_H

#include <stdexcept>
#include <string>

namespace hplwo {

// Malformed or inconsistent input (bad file line, duplicate id, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parse failure tied to a line of a text file.
class ParseError : public InputError {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : InputError(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Invalid option combination or out-of-range parameter.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Demand whose destination cannot be reached from its source.
class UnreachableError : public std::runtime_error {
 public:
  UnreachableError(const std::string& src, const std::string& dst)
      : std::runtime_error("destination " + dst + " unreachable from " + src),
        src_(src),
        dst_(dst) {}

  const std::string& src() const { return src_; }
  const std::string& dst() const { return dst_; }

 private:
  std::string src_;
  std::string dst_;
};

// Invariant violation inside the library. Never expected on valid input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hplwo

#endif  // HPLWO_ERROR_H

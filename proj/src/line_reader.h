#ifndef HPLWO_SRC_LINE_READER_H
#define HPLWO_SRC_LINE_READER_H

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "hplwo/error.h"
#include "hplwo/rational.h"

namespace hplwo {

// Iterates over the non-blank lines of a whitespace-separated text format,
// dropping '#' comments.
class LineReader {
 public:
  LineReader(std::istream& in, std::string source)
      : in_(in), source_(std::move(source)) {}

  // Fills fields with the next non-empty line's tokens. False at EOF.
  bool Next(std::vector<std::string>* fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_number_;
      size_t hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      fields->clear();
      size_t pos = 0;
      while (pos < line.size()) {
        size_t start = line.find_first_not_of(" \t\r\n", pos);
        if (start == std::string::npos) break;
        size_t end = line.find_first_of(" \t\r\n", start);
        if (end == std::string::npos) end = line.size();
        fields->emplace_back(line.substr(start, end - start));
        pos = end;
      }
      if (!fields->empty()) return true;
    }
    return false;
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError(source_, line_number_, what);
  }

  void ExpectFields(const std::vector<std::string>& fields,
                    size_t count) const {
    if (fields.size() != count) {
      Fail("expected " + std::to_string(count) + " fields for '" + fields[0] +
           "', got " + std::to_string(fields.size()));
    }
  }

  Rational Number(const std::string& text) const {
    try {
      return ParseRational(text);
    } catch (const std::invalid_argument&) {
      Fail("bad number '" + text + "'");
    }
  }

  long long Integer(const std::string& text) const {
    size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(text, &used);
    } catch (const std::exception&) {
      Fail("bad integer '" + text + "'");
    }
    if (used != text.size()) Fail("bad integer '" + text + "'");
    return value;
  }

  int line_number() const { return line_number_; }
  const std::string& source() const { return source_; }

 private:
  std::istream& in_;
  std::string source_;
  int line_number_ = 0;
};

}  // namespace hplwo

#endif  // HPLWO_SRC_LINE_READER_H

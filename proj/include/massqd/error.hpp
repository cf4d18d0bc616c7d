#pragma once

#include <stdexcept>
#include <string>

namespace massqd {

// Invalid configuration. The message always starts with the offending
// field path, e.g. "encodings[2].mask_size: must be odd and >= 3".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what),
        field_(field),
        detail_(what) {}

  const std::string& field() const noexcept { return field_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string field_;
  std::string detail_;
};

// File system failures (missing input, unwritable output).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document. `location` is a JSON pointer or byte offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& location, const std::string& what)
      : std::runtime_error(location + ": " + what), location_(location) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

}  // namespace massqd

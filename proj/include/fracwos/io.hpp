#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracwos/point.hpp"

namespace fracwos::io {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

/// Coordinates joined with `sep`.
std::string format_point(const Point& p, const std::string& sep = ",");

/// Minimal writer for flat JSON objects with deterministic number rendering.
class JsonObject {
 public:
  JsonObject& number(const std::string& key, double value);
  JsonObject& integer(const std::string& key, std::uint64_t value);
  JsonObject& string(const std::string& key, const std::string& value);
  JsonObject& null(const std::string& key);
  JsonObject& array(const std::string& key, std::span<const double> values);
  JsonObject& raw(const std::string& key, const std::string& json_text);
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string quote(const std::string& s);

}  // namespace fracwos::io

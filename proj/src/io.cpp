#include "fracwos/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fracwos::io {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string format_point(const Point& p, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) out += sep;
    out += format_double(p[i]);
  }
  return out;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

namespace {

// JSON has no inf/nan; emit null for them.
std::string json_number(double x) { return std::isfinite(x) ? format_double(x) : "null"; }

}  // namespace

JsonObject& JsonObject::number(const std::string& key, double value) {
  fields_.emplace_back(key, json_number(value));
  return *this;
}

JsonObject& JsonObject::integer(const std::string& key, std::uint64_t value) {
  fields_.emplace_back(key, std::to_string(value));
  return *this;
}

JsonObject& JsonObject::string(const std::string& key, const std::string& value) {
  fields_.emplace_back(key, quote(value));
  return *this;
}

JsonObject& JsonObject::null(const std::string& key) {
  fields_.emplace_back(key, "null");
  return *this;
}

JsonObject& JsonObject::array(const std::string& key, std::span<const double> values) {
  std::string text = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) text += ",";
    text += json_number(values[i]);
  }
  fields_.emplace_back(key, text + "]");
  return *this;
}

JsonObject& JsonObject::raw(const std::string& key, const std::string& json_text) {
  fields_.emplace_back(key, json_text);
  return *this;
}

std::string JsonObject::str() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i) os << ", ";
    os << quote(fields_[i].first) << ": " << fields_[i].second;
  }
  os << "}";
  return os.str();
}

}  // namespace fracwos::io

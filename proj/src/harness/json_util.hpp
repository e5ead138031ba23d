#pragma once

#include <optional>
#include <string>

#include "prefopt/errors.hpp"
#include "prefopt/geometry.hpp"
#include "prefopt/harness.hpp"

namespace prefopt::detail {

inline const Json& require(const Json& doc, const std::string& key) {
  if (!doc.contains(key)) throw ConfigError("missing required key '" + key + "'");
  return doc.at(key);
}

inline double as_number(const Json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("key '" + key + "' must be a number");
  return v.get<double>();
}

inline double get_number(const Json& doc, const std::string& key) {
  return as_number(require(doc, key), key);
}

inline double get_number(const Json& doc, const std::string& key, double fallback) {
  return doc.contains(key) ? as_number(doc.at(key), key) : fallback;
}

inline std::optional<double> find_number(const Json& doc, const std::string& key) {
  if (!doc.contains(key)) return std::nullopt;
  return as_number(doc.at(key), key);
}

inline double get_positive(const Json& doc, const std::string& key) {
  const double v = get_number(doc, key);
  if (!(v > 0.0)) throw ConfigError("key '" + key + "' must be positive");
  return v;
}

inline std::int64_t get_integer(const Json& doc, const std::string& key) {
  const Json& v = require(doc, key);
  if (!v.is_number_integer()) throw ConfigError("key '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

inline std::int64_t get_integer(const Json& doc, const std::string& key, std::int64_t fallback) {
  return doc.contains(key) ? get_integer(doc, key) : fallback;
}

inline std::string get_string(const Json& doc, const std::string& key) {
  const Json& v = require(doc, key);
  if (!v.is_string()) throw ConfigError("key '" + key + "' must be a string");
  return v.get<std::string>();
}

inline std::string get_string(const Json& doc, const std::string& key, const std::string& fallback) {
  return doc.contains(key) ? get_string(doc, key) : fallback;
}

inline Point as_point(const Json& v, const std::string& key, std::size_t d) {
  if (!v.is_array()) throw ConfigError("key '" + key + "' must be an array of numbers");
  if (v.size() != d) {
    throw ConfigError("key '" + key + "' must have " + std::to_string(d) + " entries");
  }
  Point p(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) p[static_cast<Eigen::Index>(i)] = as_number(v[i], key);
  return p;
}

inline Point get_point(const Json& doc, const std::string& key, std::size_t d) {
  return as_point(require(doc, key), key, d);
}

inline std::optional<Point> find_point(const Json& doc, const std::string& key, std::size_t d) {
  if (!doc.contains(key)) return std::nullopt;
  return as_point(doc.at(key), key, d);
}

}  // namespace prefopt::detail

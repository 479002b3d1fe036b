#pragma once

#include <stdexcept>
#include <string>

namespace windbid {

/// Bad experiment or generator configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or missing input data (CLI exit code 3).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Day-ahead curves fail to cross: demand exhausts supply.
class ClearingError : public std::runtime_error {
 public:
  ClearingError(const std::string& what, double supply_volume, double demand_volume)
      : std::runtime_error(what),
        supply_volume(supply_volume),
        demand_volume(demand_volume) {}

  double supply_volume;
  double demand_volume;
};

}  // namespace windbid

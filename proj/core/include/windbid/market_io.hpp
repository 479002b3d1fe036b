#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "windbid/market.hpp"

namespace windbid {

/// An hourly dataset loaded from disk (or about to be written).
struct MarketDataset {
  std::vector<std::string> timestamps;  // ISO-8601 UTC, one per hour
  std::vector<MarketState> states;
  bool eta_from_data = false;  // eta_s/eta_i columns were present
};

/// Loads `<dir>/market.csv` plus `<dir>/curves/<timestamp>.csv`.
///
/// The stored supply curves embed the producer's historical reference bid
/// (wind_forecast at price 0); loading removes it so MarketState holds the
/// other participants only. When the eta columns are missing, eta_i is
/// re-estimated per day by regressing imbalance price on system imbalance,
/// and eta_s by a finite difference of the clearing price around the
/// reference bid with step `sensitivity_probe`.
MarketDataset load_market_dir(const std::string& dir, double sensitivity_probe);

/// Writes market.csv (with eta columns) and one curve file per hour, the
/// reference bid re-inserted into the supply side.
void write_market_dir(const std::string& dir, const std::vector<MarketState>& states,
                      const std::string& start_timestamp);

/// "2022-07-01T00:00:00Z" plus `hours`. Throws DataError on a malformed
/// timestamp.
std::string advance_hours(const std::string& iso_utc, std::int64_t hours);

}  // namespace windbid

#include "windbid/market_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <map>

#include "windbid/csv.hpp"
#include "windbid/errors.hpp"

namespace fs = std::filesystem;

namespace windbid {

namespace {

constexpr const char* kMarketHeaderFull =
    "timestamp,spot_price,system_imbalance,imbalance_price,wind_forecast,"
    "wind_actual,eta_s,eta_i";
constexpr const char* kMarketHeaderShort =
    "timestamp,spot_price,system_imbalance,imbalance_price,wind_forecast,"
    "wind_actual";
constexpr const char* kCurveHeader = "side,cum_volume,price";

std::time_t parse_iso(const std::string& ts) {
  std::tm tm{};
  int y, mo, d, h, mi, s;
  if (std::sscanf(ts.c_str(), "%4d-%2d-%2dT%2d:%2d:%2dZ", &y, &mo, &d, &h, &mi,
                  &s) != 6) {
    throw DataError("bad ISO-8601 timestamp: " + ts);
  }
  tm.tm_year = y - 1900;
  tm.tm_mon = mo - 1;
  tm.tm_mday = d;
  tm.tm_hour = h;
  tm.tm_min = mi;
  tm.tm_sec = s;
  return timegm(&tm);
}

std::string format_iso(std::time_t t) {
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec);
  return buf;
}

struct Block {
  double volume;
  double price;
};

std::vector<Block> to_blocks(const BidCurve& c) {
  std::vector<Block> out;
  double prev = 0.0;
  for (const CurvePoint& p : c.points) {
    out.push_back({p.cum_volume - prev, p.price});
    prev = p.cum_volume;
  }
  return out;
}

BidCurve from_blocks(const std::vector<Block>& blocks) {
  BidCurve c;
  double cum = 0.0;
  for (const Block& b : blocks) {
    if (b.volume <= 0.0) continue;
    cum += b.volume;
    if (!c.points.empty() && c.points.back().price == b.price) {
      c.points.back().cum_volume = cum;
    } else {
      c.points.push_back({cum, b.price});
    }
  }
  return c;
}

/// Remove `volume` MWh offered at price exactly 0 from the supply curve.
BidCurve remove_reference_bid(const BidCurve& supply, double volume,
                              const std::string& context) {
  if (volume <= 0.0) return supply;
  std::vector<Block> blocks = to_blocks(supply);
  double remaining = volume;
  for (Block& b : blocks) {
    if (b.price == 0.0 && remaining > 0.0) {
      const double take = std::min(b.volume, remaining);
      b.volume -= take;
      remaining -= take;
    }
  }
  if (remaining > 1e-6) {
    throw DataError(context + ": supply curve holds less than the reference bid (" +
                    format_double(volume) + " MWh) at price 0");
  }
  return from_blocks(blocks);
}

BidCurve insert_reference_bid(const BidCurve& supply, double volume) {
  if (volume <= 0.0) return supply;
  std::vector<Block> blocks = to_blocks(supply);
  auto pos = std::find_if(blocks.begin(), blocks.end(),
                          [](const Block& b) { return b.price > 0.0; });
  blocks.insert(pos, Block{volume, 0.0});
  return from_blocks(blocks);
}

}  // namespace

std::string advance_hours(const std::string& iso_utc, std::int64_t hours) {
  return format_iso(parse_iso(iso_utc) + hours * 3600);
}

MarketDataset load_market_dir(const std::string& dir, double sensitivity_probe) {
  const std::string market_path = (fs::path(dir) / "market.csv").string();
  std::ifstream probe_file(market_path);
  if (!probe_file) throw DataError("cannot open " + market_path);
  std::string header;
  std::getline(probe_file, header);
  if (!header.empty() && header.back() == '\r') header.pop_back();
  probe_file.close();

  bool has_eta;
  if (header == kMarketHeaderFull) {
    has_eta = true;
  } else if (header == kMarketHeaderShort) {
    has_eta = false;
  } else {
    throw DataError(market_path + ": unexpected header '" + header + "'");
  }

  const auto rows = read_csv(market_path, header);
  MarketDataset data;
  data.eta_from_data = has_eta;
  data.timestamps.reserve(rows.size());
  data.states.reserve(rows.size());

  for (const auto& row : rows) {
    const std::size_t want = has_eta ? 8u : 6u;
    if (row.size() != want) {
      throw DataError(market_path + ": expected " + std::to_string(want) +
                      " cells, got " + std::to_string(row.size()));
    }
    const std::string& ts = row[0];
    MarketState s;
    s.base_spot_price = parse_double(row[1], ts + " spot_price");
    s.base_system_imbalance = parse_double(row[2], ts + " system_imbalance");
    s.base_imbalance_price = parse_double(row[3], ts + " imbalance_price");
    s.reference_forecast = parse_double(row[4], ts + " wind_forecast");
    s.generation = parse_double(row[5], ts + " wind_actual");
    if (s.generation < 0.0 || s.reference_forecast < 0.0) {
      throw DataError(ts + ": negative wind volume");
    }
    if (has_eta) {
      s.spot_sensitivity = parse_double(row[6], ts + " eta_s");
      s.imbalance_sensitivity = parse_double(row[7], ts + " eta_i");
    }

    const std::string curve_path = (fs::path(dir) / "curves" / (ts + ".csv")).string();
    BidCurve raw_supply, demand;
    for (const auto& crow : read_csv(curve_path, kCurveHeader)) {
      if (crow.size() != 3) throw DataError(curve_path + ": expected 3 cells");
      const double vol = parse_double(crow[1], curve_path + " cum_volume");
      const double price = parse_double(crow[2], curve_path + " price");
      if (crow[0] == "supply") {
        raw_supply.points.push_back({vol, price});
      } else if (crow[0] == "demand") {
        demand.points.push_back({vol, price});
      } else {
        throw DataError(curve_path + ": unknown side '" + crow[0] + "'");
      }
    }
    s.supply = remove_reference_bid(raw_supply, s.reference_forecast, curve_path);
    s.demand = demand;
    s.supply.validate(CurveSide::kSupply);
    s.demand.validate(CurveSide::kDemand);

    const ClearingResult ref = clear_day_ahead(s.reference_forecast, s.supply, s.demand);
    s.reference_imbalance = s.generation - ref.wpp_dispatch;

    if (!has_eta) {
      const double up =
          clear_day_ahead(s.reference_forecast + sensitivity_probe, s.supply, s.demand)
              .spot_price;
      const double lo_bid = std::max(0.0, s.reference_forecast - sensitivity_probe);
      const double down = clear_day_ahead(lo_bid, s.supply, s.demand).spot_price;
      const double span = (s.reference_forecast + sensitivity_probe) - lo_bid;
      s.spot_sensitivity = span > 0.0 ? (up - down) / span : 0.0;
    }

    data.timestamps.push_back(ts);
    data.states.push_back(std::move(s));
  }

  if (!has_eta) {
    // Daily regression of imbalance price on system imbalance.
    std::map<std::string, std::vector<std::size_t>> by_day;
    for (std::size_t i = 0; i < data.timestamps.size(); ++i) {
      by_day[data.timestamps[i].substr(0, 10)].push_back(i);
    }
    for (const auto& [day, idx] : by_day) {
      double mx = 0.0, my = 0.0;
      for (std::size_t i : idx) {
        mx += data.states[i].base_system_imbalance;
        my += data.states[i].base_imbalance_price;
      }
      mx /= static_cast<double>(idx.size());
      my /= static_cast<double>(idx.size());
      double sxx = 0.0, sxy = 0.0;
      for (std::size_t i : idx) {
        const double dx = data.states[i].base_system_imbalance - mx;
        sxx += dx * dx;
        sxy += dx * (data.states[i].base_imbalance_price - my);
      }
      const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
      for (std::size_t i : idx) data.states[i].imbalance_sensitivity = slope;
    }
  }
  return data;
}

void write_market_dir(const std::string& dir, const std::vector<MarketState>& states,
                      const std::string& start_timestamp) {
  fs::create_directories(fs::path(dir) / "curves");
  CsvWriter market((fs::path(dir) / "market.csv").string(), kMarketHeaderFull);
  const std::time_t start = parse_iso(start_timestamp);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const MarketState& s = states[i];
    const std::string ts = format_iso(start + static_cast<std::time_t>(i) * 3600);
    market.row({ts, format_double(s.base_spot_price),
                format_double(s.base_system_imbalance),
                format_double(s.base_imbalance_price),
                format_double(s.reference_forecast), format_double(s.generation),
                format_double(s.spot_sensitivity),
                format_double(s.imbalance_sensitivity)});
    CsvWriter curves((fs::path(dir) / "curves" / (ts + ".csv")).string(), kCurveHeader);
    const BidCurve historical = insert_reference_bid(s.supply, s.reference_forecast);
    for (const CurvePoint& p : historical.points) {
      curves.row({"supply", format_double(p.cum_volume), format_double(p.price)});
    }
    for (const CurvePoint& p : s.demand.points) {
      curves.row({"demand", format_double(p.cum_volume), format_double(p.price)});
    }
  }
}

}  // namespace windbid

#pragma once

#include <cmath>
#include <numbers>

namespace skyshare {

constexpr double kSpeedOfLight = 299'792'458.0;  // m/s
constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

// Power conventions: TBS powers and noise are carried in dBm, LAA powers in
// dBW. Linear power is always milliwatts.
inline double dbw_to_dbm(double dbw) { return dbw + 30.0; }
inline double dbm_to_dbw(double dbm) { return dbm - 30.0; }
inline double dbm_to_mw(double dbm) { return db_to_linear(dbm); }
inline double dbw_to_mw(double dbw) { return db_to_linear(dbw + 30.0); }

}  // namespace skyshare

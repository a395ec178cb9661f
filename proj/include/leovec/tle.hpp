#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "leovec/errors.hpp"

namespace leovec {

struct TleError : Error {
  using Error::Error;
};
struct TleLineLengthError : TleError {
  using TleError::TleError;
};
struct TleChecksumError : TleError {
  using TleError::TleError;
};
struct TleFieldError : TleError {
  using TleError::TleError;
};

// One two-line element set. Angles in degrees, mean motion in rev/day.
// Drag-related fields are carried through for round-tripping but the
// propagator ignores them (two-body model).
struct TleRecord {
  std::string name;
  int catalog_id = 0;
  char classification = 'U';
  std::string intl_designator;  // line 1 cols 10-17, verbatim
  int epoch_year = 0;           // four-digit year
  double epoch_day = 0.0;       // fractional day of year, 1.0 = Jan 1 00:00
  double mean_motion_dot = 0.0;
  std::string mean_motion_ddot = " 00000-0";  // exponent-coded 8-char field, verbatim
  std::string bstar = " 00000-0";
  int element_set_no = 0;
  double inclination_deg = 0.0;
  double raan_deg = 0.0;
  double eccentricity = 0.0;
  double arg_perigee_deg = 0.0;
  double mean_anomaly_deg = 0.0;
  double mean_motion_rev_day = 0.0;
  int rev_number = 0;
  std::array<std::string, 2> raw_lines;

  bool operator==(const TleRecord&) const = default;
};

struct Constellation {
  std::vector<TleRecord> records;
  std::string source_path;
  std::string fetched_at;  // ISO date if known, else empty
};

// Modulo-10 checksum over the first 68 columns: digits count as their value,
// '-' counts as 1, everything else as 0.
int tle_checksum(const std::string& line);

// Parses one element set from its two data lines. `name` may be empty; the
// record is then named SAT-<catalog_id>.
TleRecord parse_tle(const std::string& name, const std::string& line1,
                    const std::string& line2);

// Formats a record back into canonical 69-column lines, checksums included.
std::array<std::string, 2> format_tle(const TleRecord& rec);

// Parses a whole file of 2- or 3-line groups. Throws TleError with the
// offending record index on any malformed group or duplicate catalog id.
std::vector<TleRecord> parse_tle_file(const std::string& text);

// Loads `path` and, when target_size is positive and smaller than the file,
// keeps a uniformly random subset of exactly target_size records (same seed,
// same subset; file order preserved). target_size 0 keeps everything.
Constellation load_constellation(const std::string& path, int target_size,
                                 uint64_t seed);

}  // namespace leovec

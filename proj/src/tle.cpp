#include "leovec/tle.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "leovec/rng.hpp"

namespace leovec {

namespace {

std::string rstrip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n' || s.back() == ' '))
    s.pop_back();
  return s;
}

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(' ');
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(' ');
  return s.substr(b, e - b + 1);
}

// 1-based inclusive column range, matching how TLE layouts are documented.
std::string field(const std::string& line, int first, int last) {
  return line.substr(first - 1, last - first + 1);
}

double parse_double_field(const std::string& line, int first, int last,
                          const char* what) {
  std::string raw = strip(field(line, first, last));
  if (raw.empty())
    throw TleFieldError(std::string("empty ") + what + " field (cols " +
                        std::to_string(first) + "-" + std::to_string(last) + ")");
  double value = 0.0;
  const char* begin = raw.data();
  const char* end = raw.data() + raw.size();
  if (begin[0] == '+') ++begin;
  auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end)
    throw TleFieldError(std::string("bad ") + what + " field '" + raw +
                        "' (cols " + std::to_string(first) + "-" +
                        std::to_string(last) + ")");
  return value;
}

int parse_int_field(const std::string& line, int first, int last,
                    const char* what) {
  std::string raw = strip(field(line, first, last));
  if (raw.empty()) return 0;
  int value = 0;
  auto res = std::from_chars(raw.data(), raw.data() + raw.size(), value);
  if (res.ec != std::errc() || res.ptr != raw.data() + raw.size())
    throw TleFieldError(std::string("bad ") + what + " field '" + raw +
                        "' (cols " + std::to_string(first) + "-" +
                        std::to_string(last) + ")");
  return value;
}

double normalize_deg(double x) {
  x = std::fmod(x, 360.0);
  if (x < 0.0) x += 360.0;
  return x;
}

void check_line(const std::string& line, char tag, int lineno) {
  if (line.size() != 69)
    throw TleLineLengthError("line " + std::to_string(lineno) + " is " +
                             std::to_string(line.size()) +
                             " chars, expected 69");
  if (line[0] != tag)
    throw TleFieldError("line " + std::to_string(lineno) +
                        " does not start with '" + tag + "'");
  int want = line[68] - '0';
  int got = tle_checksum(line);
  if (want < 0 || want > 9 || got != want)
    throw TleChecksumError("checksum mismatch on line " +
                           std::to_string(lineno) + ": computed " +
                           std::to_string(got) + ", stated '" +
                           std::string(1, line[68]) + "'");
}

// ndot prints as sign column plus ".DDDDDDDD" (no leading zero).
std::string format_ndot(double v) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.8f", std::fabs(v));
  std::string frac(buf + 1);  // drop the leading '0'
  return (v < 0 ? "-" : " ") + frac;
}

}  // namespace

int tle_checksum(const std::string& line) {
  int sum = 0;
  size_t n = std::min<size_t>(line.size(), 68);
  for (size_t i = 0; i < n; ++i) {
    char c = line[i];
    if (c >= '0' && c <= '9') sum += c - '0';
    else if (c == '-') sum += 1;
  }
  return sum % 10;
}

TleRecord parse_tle(const std::string& name, const std::string& line1,
                    const std::string& line2) {
  check_line(line1, '1', 1);
  check_line(line2, '2', 2);

  TleRecord rec;
  rec.raw_lines = {line1, line2};
  rec.catalog_id = parse_int_field(line1, 3, 7, "catalog id");
  int catalog2 = parse_int_field(line2, 3, 7, "catalog id");
  if (rec.catalog_id != catalog2)
    throw TleFieldError("catalog id differs between lines: " +
                        std::to_string(rec.catalog_id) + " vs " +
                        std::to_string(catalog2));
  rec.classification = line1[7];
  rec.intl_designator = field(line1, 10, 17);

  int yy = parse_int_field(line1, 19, 20, "epoch year");
  rec.epoch_year = yy < 57 ? 2000 + yy : 1900 + yy;
  rec.epoch_day = parse_double_field(line1, 21, 32, "epoch day");
  if (rec.epoch_day < 1.0 || rec.epoch_day >= 367.0)
    throw TleFieldError("epoch day " + std::to_string(rec.epoch_day) +
                        " out of range");
  rec.mean_motion_dot = parse_double_field(line1, 34, 43, "mean motion dot");
  rec.mean_motion_ddot = field(line1, 45, 52);
  rec.bstar = field(line1, 54, 61);
  rec.element_set_no = parse_int_field(line1, 65, 68, "element set number");

  rec.inclination_deg = parse_double_field(line2, 9, 16, "inclination");
  rec.raan_deg = normalize_deg(parse_double_field(line2, 18, 25, "raan"));
  std::string ecc_raw = strip(field(line2, 27, 33));
  std::string ecc_str = "0." + ecc_raw;  // implied leading decimal point
  double ecc = 0.0;
  auto ecc_res = std::from_chars(ecc_str.data(), ecc_str.data() + ecc_str.size(), ecc);
  if (ecc_raw.empty() || ecc_res.ec != std::errc() ||
      ecc_res.ptr != ecc_str.data() + ecc_str.size())
    throw TleFieldError("bad eccentricity field '" + ecc_raw + "' (cols 27-33)");
  rec.eccentricity = ecc;
  rec.arg_perigee_deg =
      normalize_deg(parse_double_field(line2, 35, 42, "argument of perigee"));
  rec.mean_anomaly_deg =
      normalize_deg(parse_double_field(line2, 44, 51, "mean anomaly"));
  rec.mean_motion_rev_day = parse_double_field(line2, 53, 63, "mean motion");
  rec.rev_number = parse_int_field(line2, 64, 68, "rev number");

  if (rec.inclination_deg < 0.0 || rec.inclination_deg > 180.0)
    throw TleFieldError("inclination " + std::to_string(rec.inclination_deg) +
                        " out of [0, 180]");
  if (rec.eccentricity < 0.0 || rec.eccentricity >= 1.0)
    throw TleFieldError("eccentricity " + std::to_string(rec.eccentricity) +
                        " out of [0, 1)");
  if (rec.mean_motion_rev_day <= 0.0)
    throw TleFieldError("mean motion must be positive");

  std::string trimmed = strip(rstrip(name));
  if (trimmed.rfind("0 ", 0) == 0) trimmed = trimmed.substr(2);
  rec.name = trimmed.empty() ? "SAT-" + std::to_string(rec.catalog_id)
                             : trimmed;
  return rec;
}

std::array<std::string, 2> format_tle(const TleRecord& rec) {
  char l1[80], l2[80];
  std::string intl = rec.intl_designator;
  intl.resize(8, ' ');
  std::snprintf(l1, sizeof(l1), "1 %05d%c %-8s %02d%012.8f %s %-8s %-8s 0 %4d",
                rec.catalog_id, rec.classification, intl.c_str(),
                rec.epoch_year % 100, rec.epoch_day,
                format_ndot(rec.mean_motion_dot).c_str(),
                rec.mean_motion_ddot.c_str(), rec.bstar.c_str(),
                rec.element_set_no);
  long ecc_digits = std::lround(rec.eccentricity * 1e7);
  std::snprintf(l2, sizeof(l2),
                "2 %05d %8.4f %8.4f %07ld %8.4f %8.4f %11.8f%5d",
                rec.catalog_id, rec.inclination_deg, rec.raan_deg, ecc_digits,
                rec.arg_perigee_deg, rec.mean_anomaly_deg,
                rec.mean_motion_rev_day, rec.rev_number);
  std::string line1(l1), line2(l2);
  line1 += std::to_string(tle_checksum(line1));
  line2 += std::to_string(tle_checksum(line2));
  return {line1, line2};
}

std::vector<TleRecord> parse_tle_file(const std::string& text) {
  std::vector<TleRecord> records;
  std::unordered_set<int> seen;
  std::istringstream in(text);
  std::string line, pending_name;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = rstrip(line);
    if (line.empty()) continue;
    if (line.size() == 69 && line[0] == '1' && line[1] == ' ') {
      std::string line2;
      if (!std::getline(in, line2))
        throw TleFieldError("record " + std::to_string(records.size() + 1) +
                            ": line 1 without a line 2 (at input line " +
                            std::to_string(lineno) + ")");
      ++lineno;
      line2 = rstrip(line2);
      try {
        TleRecord rec = parse_tle(pending_name, line, line2);
        if (!seen.insert(rec.catalog_id).second)
          throw TleFieldError("duplicate catalog id " +
                              std::to_string(rec.catalog_id));
        records.push_back(std::move(rec));
      } catch (const TleError& e) {
        throw TleFieldError("record " + std::to_string(records.size() + 1) +
                            " (input line " + std::to_string(lineno - 1) +
                            "): " + e.what());
      }
      pending_name.clear();
    } else {
      pending_name = line;
    }
  }
  return records;
}

Constellation load_constellation(const std::string& path, int target_size,
                                 uint64_t seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open TLE file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();

  Constellation c;
  c.source_path = path;
  c.records = parse_tle_file(buf.str());
  if (c.records.empty()) throw TleError("no TLE records in " + path);

  if (target_size < 0)
    throw TleError("constellation size must be non-negative");
  int total = static_cast<int>(c.records.size());
  if (target_size > total)
    throw TleError("requested " + std::to_string(target_size) +
                   " satellites but " + path + " holds only " +
                   std::to_string(total));
  if (target_size == 0 || target_size == total) return c;

  // Selection sampling: keeps file order and depends only on (seed, counts).
  Pcg32 rng = make_stream(seed, "constellation-subset");
  std::vector<TleRecord> subset;
  subset.reserve(target_size);
  int needed = target_size;
  for (int i = 0; i < total && needed > 0; ++i) {
    uint32_t remaining = static_cast<uint32_t>(total - i);
    if (rng.next_below(remaining) < static_cast<uint32_t>(needed)) {
      subset.push_back(std::move(c.records[i]));
      --needed;
    }
  }
  c.records = std::move(subset);
  return c;
}

}  // namespace leovec

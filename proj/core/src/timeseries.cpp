#include "bessopt/timeseries.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bessopt {

namespace {

// Days since 1970-01-01 for a civil date (Howard Hinnant's algorithm).
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<int>(yoe) + static_cast<int>(era) * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y += m <= 2;
}

bool parse_int(const std::string& s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    out = 0;
    for (std::size_t i = 0; i < len; ++i) {
        char c = s[pos + i];
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        out = out * 10 + (c - '0');
    }
    return true;
}

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

MinuteTime parse_minute_time(const std::string& text) {
    // YYYY-MM-DDTHH:MM
    int y, mo, d, h, mi;
    bool ok = text.size() == 16 && text[4] == '-' && text[7] == '-' &&
              (text[10] == 'T' || text[10] == ' ') && text[13] == ':' &&
              parse_int(text, 0, 4, y) && parse_int(text, 5, 2, mo) &&
              parse_int(text, 8, 2, d) && parse_int(text, 11, 2, h) &&
              parse_int(text, 14, 2, mi);
    if (!ok || mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59)
        throw TimeseriesError("invalid timestamp '" + text + "' (expected YYYY-MM-DDTHH:MM)");
    return MinuteTime{days_from_civil(y, mo, d) * 1440 + h * 60 + mi};
}

std::string format_minute_time(MinuteTime t) {
    std::int64_t days = t.minutes_since_epoch / 1440;
    std::int64_t rem = t.minutes_since_epoch % 1440;
    if (rem < 0) {
        rem += 1440;
        days -= 1;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02lld:%02lld", y, m, d,
                  static_cast<long long>(rem / 60), static_cast<long long>(rem % 60));
    return buf;
}

void validate_series(const IntervalSeries& s) {
    if (s.values.empty()) throw TimeseriesError("series has no values");
    if (s.step_minutes <= 0 || 60 % s.step_minutes != 0)
        throw TimeseriesError("step_minutes must be positive and divide 60");
    for (std::size_t i = 0; i < s.values.size(); ++i)
        if (!std::isfinite(s.values[i]))
            throw TimeseriesError("non-finite value at index " + std::to_string(i));
}

IntervalSeries parse_csv(const std::string& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) throw TimeseriesError("cannot open file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw TimeseriesError(path + ": empty file");

    // Header: first column is the timestamp, pick the requested value column.
    std::vector<std::string> header;
    {
        std::stringstream ss(strip(line));
        std::string field;
        while (std::getline(ss, field, ',')) header.push_back(strip(field));
    }
    if (header.empty() || header[0] != "timestamp")
        throw TimeseriesError(path + ": header must start with 'timestamp'");
    int col = -1;
    for (std::size_t i = 1; i < header.size(); ++i)
        if (header[i] == column) col = static_cast<int>(i);
    if (col < 0) throw TimeseriesError(path + ": no column named '" + column + "'");

    IntervalSeries out;
    std::int64_t prev = 0, step = 0;
    int row = 1;  // header is row 1
    while (std::getline(in, line)) {
        ++row;
        std::string t = strip(line);
        if (t.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(t);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(strip(field));
        if (static_cast<int>(fields.size()) <= col)
            throw TimeseriesError(path + ": row " + std::to_string(row) + ": too few columns");

        MinuteTime ts;
        try {
            ts = parse_minute_time(fields[0]);
        } catch (const TimeseriesError& e) {
            throw TimeseriesError(path + ": row " + std::to_string(row) + ": " + e.what());
        }

        const std::string& vs = fields[col];
        double v;
        auto res = std::from_chars(vs.data(), vs.data() + vs.size(), v);
        if (res.ec != std::errc{} || res.ptr != vs.data() + vs.size() || !std::isfinite(v))
            throw TimeseriesError(path + ": row " + std::to_string(row) +
                                  ": non-numeric value '" + vs + "'");
        if (v < 0.0)
            throw TimeseriesError(path + ": row " + std::to_string(row) +
                                  ": negative value " + vs);

        if (out.values.empty()) {
            out.start = ts;
        } else {
            std::int64_t d = ts.minutes_since_epoch - prev;
            if (d <= 0)
                throw TimeseriesError(path + ": row " + std::to_string(row) +
                                      ": timestamps not strictly increasing");
            if (step == 0) {
                step = d;
            } else if (d != step) {
                throw TimeseriesError(path + ": row " + std::to_string(row) +
                                      ": non-uniform spacing (expected " +
                                      std::to_string(step) + " min, got " +
                                      std::to_string(d) + " min)");
            }
        }
        prev = ts.minutes_since_epoch;
        out.values.push_back(v);
    }
    if (out.values.empty()) throw TimeseriesError(path + ": no data rows");
    out.step_minutes = step == 0 ? 15 : static_cast<int>(step);
    if (out.step_minutes > 1440 || 1440 % out.step_minutes != 0)
        throw TimeseriesError(path + ": unsupported step of " +
                              std::to_string(out.step_minutes) + " minutes");
    validate_series(out);
    return out;
}

IntervalSeries resample_to_15min(const IntervalSeries& s) {
    validate_series(s);
    if (s.step_minutes == 15) return s;
    if (s.step_minutes != 1 && s.step_minutes != 5)
        throw TimeseriesError("resample supports 1, 5 or 15 minute input, got " +
                              std::to_string(s.step_minutes));
    const int per_window = 15 / s.step_minutes;
    if (s.values.size() % per_window != 0)
        throw TimeseriesError("series length " + std::to_string(s.values.size()) +
                              " not divisible by " + std::to_string(per_window));
    if (s.start.minutes_since_epoch % 15 != 0)
        throw TimeseriesError("series must start on a clock-aligned 15-minute boundary");

    IntervalSeries out;
    out.start = s.start;
    out.step_minutes = 15;
    out.values.reserve(s.values.size() / per_window);
    for (std::size_t i = 0; i < s.values.size(); i += per_window) {
        double sum = 0.0;
        for (int j = 0; j < per_window; ++j) sum += s.values[i + j];
        out.values.push_back(sum / per_window);
    }
    return out;
}

}  // namespace bessopt

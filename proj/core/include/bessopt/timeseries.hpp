#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bessopt {

// Naive local wall-clock time with minute precision. No time zone, no DST:
// ingestion rejects days that do not have exactly 1440/step intervals.
struct MinuteTime {
    std::int64_t minutes_since_epoch = 0;

    friend auto operator<=>(const MinuteTime&, const MinuteTime&) = default;
};

MinuteTime parse_minute_time(const std::string& text);  // "YYYY-MM-DDTHH:MM"
std::string format_minute_time(MinuteTime t);

// Uniformly sampled average-power series (kW).
struct IntervalSeries {
    MinuteTime start;
    int step_minutes = 15;
    std::vector<double> values;

    int intervals_per_day() const { return 1440 / step_minutes; }
    int whole_days() const { return static_cast<int>(values.size()) / intervals_per_day(); }
};

struct TimeseriesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reads a CSV with header "timestamp,kw" (or any header naming `column`).
// Timestamps must be strictly increasing and uniformly spaced; values must
// be finite and non-negative. Violations name the offending row.
IntervalSeries parse_csv(const std::string& path, const std::string& column = "kw");

// Averages to 15-minute windows, clock-aligned. Total energy is preserved.
// step_minutes must be 1, 5 or 15 and the length divisible by 15/step.
IntervalSeries resample_to_15min(const IntervalSeries& s);

void validate_series(const IntervalSeries& s);

}  // namespace bessopt

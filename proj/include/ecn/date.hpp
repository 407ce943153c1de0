#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace ecn {

// Calendar date at day precision. Month- or year-only sources are
// normalized to the first day of the period before a Date is built.
struct Date {
    int year = 0;
    int month = 1;
    int day = 1;

    auto operator<=>(const Date&) const = default;

    bool valid() const;
    std::string to_string() const; // YYYY-MM-DD

    // Accepts "YYYY-MM-DD", "YYYY-MM" and "YYYY"; missing parts become 01.
    static Date parse(const std::string& text);
    static std::optional<Date> try_parse(const std::string& text);

    // Days since 1970-01-01 (proleptic Gregorian).
    std::int64_t serial_days() const;
    Date plus_days(std::int64_t n) const;
};

std::int64_t days_between(const Date& from, const Date& to); // to - from

// English month name or number ("Jan", "01", "1") to 1..12; nullopt if unknown.
std::optional<int> month_from_token(const std::string& token);

} // namespace ecn

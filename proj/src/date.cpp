#include "ecn/date.hpp"

#include <array>
#include <algorithm>
#include <cctype>

#include "ecn/errors.hpp"

namespace ecn {

namespace {

bool is_leap(int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

int days_in_month(int y, int m) {
    static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                    31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[static_cast<std::size_t>(m - 1)];
}

} // namespace

bool Date::valid() const {
    if (year < 1 || month < 1 || month > 12) return false;
    return day >= 1 && day <= days_in_month(year, month);
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

std::optional<Date> Date::try_parse(const std::string& text) {
    Date d;
    int fields[3] = {0, 1, 1};
    int field = 0;
    std::size_t i = 0;
    while (i < text.size() && field < 3) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
        int value = 0;
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            value = value * 10 + (text[i] - '0');
            ++i;
        }
        if (field == 0 && i - start != 4) return std::nullopt;
        fields[field++] = value;
        if (i < text.size()) {
            if (text[i] != '-') return std::nullopt;
            ++i;
            if (i == text.size()) return std::nullopt; // trailing dash
        }
    }
    if (field == 0 || i != text.size()) return std::nullopt;
    d.year = fields[0];
    d.month = fields[1];
    d.day = fields[2];
    if (!d.valid()) return std::nullopt;
    return d;
}

Date Date::parse(const std::string& text) {
    auto d = try_parse(text);
    if (!d) throw ParseError("invalid date: '" + text + "'");
    return *d;
}

// Howard Hinnant's civil-days algorithm.
std::int64_t Date::serial_days() const {
    std::int64_t y = year;
    const int m = month;
    const int d = day;
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

Date Date::plus_days(std::int64_t n) const {
    std::int64_t z = serial_days() + n + 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

std::int64_t days_between(const Date& from, const Date& to) {
    return to.serial_days() - from.serial_days();
}

std::optional<int> month_from_token(const std::string& token) {
    static constexpr std::array<const char*, 12> names = {
        "jan", "feb", "mar", "apr", "may", "jun",
        "jul", "aug", "sep", "oct", "nov", "dec"};
    if (token.empty()) return std::nullopt;
    if (std::isdigit(static_cast<unsigned char>(token[0]))) {
        int v = 0;
        for (char c : token) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
            v = v * 10 + (c - '0');
        }
        if (v >= 1 && v <= 12) return v;
        return std::nullopt;
    }
    std::string low;
    for (char c : token) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (low.rfind(names[i], 0) == 0) return static_cast<int>(i + 1);
    }
    return std::nullopt;
}

} // namespace ecn

#include "bpprod/timestamp.hpp"

#include <charconv>
#include <cstdio>

namespace bpprod {
namespace {

bool read_int(std::string_view text, std::size_t& pos, std::size_t digits, int& out)
{
    if (pos + digits > text.size()) {
        return false;
    }
    const char* first = text.data() + pos;
    for (std::size_t i = 0; i < digits; ++i) {
        if (first[i] < '0' || first[i] > '9') {
            return false;
        }
    }
    auto [ptr, ec] = std::from_chars(first, first + digits, out);
    if (ec != std::errc{} || ptr != first + digits) {
        return false;
    }
    pos += digits;
    return true;
}

bool expect(std::string_view text, std::size_t& pos, char c)
{
    if (pos < text.size() && text[pos] == c) {
        ++pos;
        return true;
    }
    return false;
}

}  // namespace

std::optional<Timestamp> parse_iso8601(std::string_view text)
{
    using namespace std::chrono;

    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }

    std::size_t pos = 0;
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    if (!read_int(text, pos, 4, y) || !expect(text, pos, '-') || !read_int(text, pos, 2, mo) ||
        !expect(text, pos, '-') || !read_int(text, pos, 2, d)) {
        return std::nullopt;
    }
    if (!expect(text, pos, 'T') && !expect(text, pos, ' ')) {
        return std::nullopt;
    }
    if (!read_int(text, pos, 2, h) || !expect(text, pos, ':') || !read_int(text, pos, 2, mi) ||
        !expect(text, pos, ':') || !read_int(text, pos, 2, s)) {
        return std::nullopt;
    }
    if (h > 23 || mi > 59 || s > 60) {
        return std::nullopt;
    }

    std::int64_t micros = 0;
    if (expect(text, pos, '.') || expect(text, pos, ',')) {
        std::size_t n = 0;
        std::int64_t scale = 100000;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            if (scale > 0) {
                micros += (text[pos] - '0') * scale;
                scale /= 10;
            }
            ++pos;
            ++n;
        }
        if (n == 0) {
            return std::nullopt;
        }
    }

    int offset_minutes = 0;
    if (pos < text.size()) {
        const char sign = text[pos];
        if (sign == 'Z' || sign == 'z') {
            ++pos;
        } else if (sign == '+' || sign == '-') {
            ++pos;
            int oh = 0, om = 0;
            if (!read_int(text, pos, 2, oh)) {
                return std::nullopt;
            }
            expect(text, pos, ':');
            if (pos < text.size() && !read_int(text, pos, 2, om)) {
                return std::nullopt;
            }
            if (oh > 23 || om > 59) {
                return std::nullopt;
            }
            offset_minutes = (sign == '-' ? -1 : 1) * (oh * 60 + om);
        } else {
            return std::nullopt;
        }
    }
    if (pos != text.size()) {
        return std::nullopt;
    }

    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) {
        return std::nullopt;
    }
    Timestamp local = sys_days{ymd} + hours{h} + minutes{mi} + seconds{s} + microseconds{micros};
    return local - minutes{offset_minutes};
}

std::string format_iso8601(Timestamp ts)
{
    using namespace std::chrono;
    const auto day_point = floor<days>(ts);
    const year_month_day ymd{day_point};
    const hh_mm_ss tod{ts - day_point};
    const auto micros = tod.subseconds().count();

    char buf[48];
    int n = std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", static_cast<int>(ymd.year()),
                          static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                          static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                          static_cast<int>(tod.seconds().count()));
    std::string out(buf, static_cast<std::size_t>(n));
    if (micros != 0) {
        if (micros % 1000 == 0) {
            std::snprintf(buf, sizeof buf, ".%03d", static_cast<int>(micros / 1000));
        } else {
            std::snprintf(buf, sizeof buf, ".%06d", static_cast<int>(micros));
        }
        out += buf;
    }
    out += 'Z';
    return out;
}

}  // namespace bpprod

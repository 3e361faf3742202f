#include "floerforge/grading.hpp"

#include <charconv>
#include <ostream>

namespace floerforge {

std::string format_grading(const Grading& g) {
    if (g.denominator() == 1) return std::to_string(g.numerator());
    return std::to_string(g.numerator()) + "/" + std::to_string(g.denominator());
}

std::ostream& operator<<(std::ostream& os, const Grading& g) { return os << format_grading(g); }

namespace {

std::int64_t parse_int(std::string_view s, const std::string& whole) {
    std::int64_t v = 0;
    if (s.empty()) throw std::invalid_argument("bad grading '" + whole + "'");
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("bad grading '" + whole + "'");
    return v;
}

}  // namespace

Grading parse_grading(const std::string& text) {
    std::string_view s(text);
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Grading(parse_int(s, text));
    std::int64_t num = parse_int(s.substr(0, slash), text);
    std::int64_t den = parse_int(s.substr(slash + 1), text);
    if (den <= 0) throw std::invalid_argument("bad grading '" + text + "'");
    return Grading(num, den);
}

std::int64_t integral_value(const Grading& g, const char* what) {
    if (g.denominator() != 1)
        throw DomainError(std::string(what) + ": expected an integer, got " + format_grading(g));
    return g.numerator();
}

}  // namespace floerforge

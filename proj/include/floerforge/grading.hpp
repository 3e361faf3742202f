#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <iosfwd>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace floerforge {

// Exact rational grading. Wraps boost::rational so that comparisons with
// integers go through one well-defined overload set (mixed rational/integer
// equality in boost 1.74 recurses under C++20 rewritten comparisons).
class Grading {
public:
    using Rep = boost::rational<std::int64_t>;

    Grading() = default;
    Grading(std::int64_t n) : r_(n) {}  // NOLINT(google-explicit-constructor)
    Grading(std::int64_t num, std::int64_t den) : r_(num, den) {}

    std::int64_t numerator() const { return r_.numerator(); }
    std::int64_t denominator() const { return r_.denominator(); }

    Grading& operator+=(const Grading& o) { r_ += o.r_; return *this; }
    Grading& operator-=(const Grading& o) { r_ -= o.r_; return *this; }
    Grading& operator*=(const Grading& o) { r_ *= o.r_; return *this; }
    Grading& operator/=(const Grading& o) { r_ /= o.r_; return *this; }
    Grading operator-() const { Grading g; g.r_ = -r_; return g; }

    friend Grading operator+(Grading a, const Grading& b) { return a += b; }
    friend Grading operator-(Grading a, const Grading& b) { return a -= b; }
    friend Grading operator*(Grading a, const Grading& b) { return a *= b; }
    friend Grading operator/(Grading a, const Grading& b) { return a /= b; }

    friend bool operator==(const Grading& a, const Grading& b) {
        return a.numerator() == b.numerator() && a.denominator() == b.denominator();
    }
    friend std::strong_ordering operator<=>(const Grading& a, const Grading& b) {
        if (a == b) return std::strong_ordering::equal;
        return a.r_ < b.r_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }

private:
    Rep r_;
};

std::ostream& operator<<(std::ostream& os, const Grading& g);

// Raised for mathematically invalid requests (bad complex, unsupported shape).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Canonical text form: "n" for integers, "p/q" otherwise.
std::string format_grading(const Grading& g);

// Accepts "n" or "p/q"; throws std::invalid_argument on anything else.
Grading parse_grading(const std::string& text);

inline bool is_integral(const Grading& g) { return g.denominator() == 1; }

// Throws DomainError when g is not an integer.
std::int64_t integral_value(const Grading& g, const char* what);

inline Grading halves(std::int64_t n) { return Grading(n, 2); }

}  // namespace floerforge

#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <mpfr.h>

namespace jsd {

// Software wide floating point, fixed binary precision per value.
// The default 128 bits carries ~38 significant decimal digits.
class WideValue {
public:
    static constexpr unsigned kDefaultPrecisionBits = 128;

    WideValue();
    explicit WideValue(double x, unsigned precision_bits = kDefaultPrecisionBits);
    // Parses a decimal literal, e.g. "0.6931471805599453094172321214581765681".
    explicit WideValue(std::string_view decimal, unsigned precision_bits = kDefaultPrecisionBits);

    WideValue(const WideValue& other);
    WideValue(WideValue&& other) noexcept;
    WideValue& operator=(const WideValue& other);
    WideValue& operator=(WideValue&& other) noexcept;
    ~WideValue();

    unsigned precision_bits() const;
    double to_double() const;
    std::string to_string(std::size_t digits = 40) const;
    bool is_zero() const;

    WideValue operator-() const;
    friend WideValue operator+(const WideValue& a, const WideValue& b);
    friend WideValue operator-(const WideValue& a, const WideValue& b);
    friend WideValue operator*(const WideValue& a, const WideValue& b);
    friend WideValue operator/(const WideValue& a, const WideValue& b);
    WideValue& operator+=(const WideValue& b);
    WideValue& operator-=(const WideValue& b);
    WideValue& operator*=(const WideValue& b);
    WideValue& operator/=(const WideValue& b);

    friend bool operator==(const WideValue& a, const WideValue& b);
    friend std::strong_ordering operator<=>(const WideValue& a, const WideValue& b);

    friend WideValue ln(const WideValue& x);     // natural log
    friend WideValue ln1p(const WideValue& x);   // ln(1+x), stable near 0
    friend WideValue abs(const WideValue& x);

private:
    struct uninitialized_tag {};
    WideValue(uninitialized_tag, unsigned precision_bits);
    mpfr_t v_;
};

WideValue ln(const WideValue& x);
WideValue ln1p(const WideValue& x);
WideValue abs(const WideValue& x);

} // namespace jsd

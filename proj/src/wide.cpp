#include "jsd/wide.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "jsd/errors.hpp"

namespace jsd {

namespace {
mpfr_prec_t checked_prec(unsigned bits) {
    if (bits < 2 || bits > 1u << 20)
        throw validation_error("WideValue: precision must be between 2 and 2^20 bits");
    return static_cast<mpfr_prec_t>(bits);
}
} // namespace

WideValue::WideValue(uninitialized_tag, unsigned precision_bits) {
    mpfr_init2(v_, checked_prec(precision_bits));
}

WideValue::WideValue() : WideValue(uninitialized_tag{}, kDefaultPrecisionBits) {
    mpfr_set_zero(v_, 1);
}

WideValue::WideValue(double x, unsigned precision_bits) : WideValue(uninitialized_tag{}, precision_bits) {
    mpfr_set_d(v_, x, MPFR_RNDN);
}

WideValue::WideValue(std::string_view decimal, unsigned precision_bits)
    : WideValue(uninitialized_tag{}, precision_bits) {
    // the delegated-to constructor finished, so the destructor will clear v_
    const std::string s(decimal);
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
        throw validation_error("WideValue: unparseable decimal literal: " + s);
}

WideValue::WideValue(const WideValue& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

WideValue::WideValue(WideValue&& other) noexcept {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_swap(v_, other.v_);
}

WideValue& WideValue::operator=(const WideValue& other) {
    if (this != &other) {
        mpfr_set_prec(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

WideValue& WideValue::operator=(WideValue&& other) noexcept {
    if (this != &other) mpfr_swap(v_, other.v_);
    return *this;
}

WideValue::~WideValue() {
    mpfr_clear(v_);
}

unsigned WideValue::precision_bits() const {
    return static_cast<unsigned>(mpfr_get_prec(v_));
}

double WideValue::to_double() const {
    return mpfr_get_d(v_, MPFR_RNDN);
}

std::string WideValue::to_string(std::size_t digits) const {
    digits = std::max<std::size_t>(digits, 2);
    std::vector<char> buf(digits + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", static_cast<int>(digits), v_);
    return std::string(buf.data());
}

bool WideValue::is_zero() const {
    return mpfr_zero_p(v_) != 0;
}

namespace {
unsigned max_prec(const WideValue& a, const WideValue& b) {
    return std::max(a.precision_bits(), b.precision_bits());
}
} // namespace

WideValue WideValue::operator-() const {
    WideValue r(uninitialized_tag{}, precision_bits());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

WideValue operator+(const WideValue& a, const WideValue& b) {
    WideValue r(WideValue::uninitialized_tag{}, max_prec(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

WideValue operator-(const WideValue& a, const WideValue& b) {
    WideValue r(WideValue::uninitialized_tag{}, max_prec(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

WideValue operator*(const WideValue& a, const WideValue& b) {
    WideValue r(WideValue::uninitialized_tag{}, max_prec(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

WideValue operator/(const WideValue& a, const WideValue& b) {
    WideValue r(WideValue::uninitialized_tag{}, max_prec(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

WideValue& WideValue::operator+=(const WideValue& b) { return *this = *this + b; }
WideValue& WideValue::operator-=(const WideValue& b) { return *this = *this - b; }
WideValue& WideValue::operator*=(const WideValue& b) { return *this = *this * b; }
WideValue& WideValue::operator/=(const WideValue& b) { return *this = *this / b; }

bool operator==(const WideValue& a, const WideValue& b) {
    return mpfr_cmp(a.v_, b.v_) == 0;
}

std::strong_ordering operator<=>(const WideValue& a, const WideValue& b) {
    const int c = mpfr_cmp(a.v_, b.v_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

WideValue ln(const WideValue& x) {
    WideValue r(WideValue::uninitialized_tag{}, x.precision_bits());
    mpfr_log(r.v_, x.v_, MPFR_RNDN);
    return r;
}

WideValue ln1p(const WideValue& x) {
    WideValue r(WideValue::uninitialized_tag{}, x.precision_bits());
    mpfr_log1p(r.v_, x.v_, MPFR_RNDN);
    return r;
}

WideValue abs(const WideValue& x) {
    WideValue r(WideValue::uninitialized_tag{}, x.precision_bits());
    mpfr_abs(r.v_, x.v_, MPFR_RNDN);
    return r;
}

} // namespace jsd

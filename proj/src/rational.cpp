#include "polycontract/rational.hpp"

#include "polycontract/errors.hpp"

#include <cctype>
#include <cstddef>

namespace polycontract {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

Int parse_unsigned_int(std::string_view digits) {
    Int value = 0;
    for (char c : digits) {
        value *= 10;
        value += c - '0';
    }
    return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    // Trim surrounding whitespace.
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw InputError("empty rational literal");

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw InputError("malformed rational literal: '" + std::string(text) + "'");

    auto fail = [&]() -> Rational {
        throw InputError("malformed rational literal: '" + std::string(text) + "'");
    };

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = s.substr(0, slash);
        std::string_view den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return fail();
        Int d = parse_unsigned_int(den);
        if (d == 0) throw InputError("zero denominator in rational literal: '" + std::string(text) + "'");
        Rational r(parse_unsigned_int(num), d);
        return negative ? Rational(-r) : r;
    }

    // Decimal or plain integer, with optional exponent: 0.25, 1e-3, 2.5e2.
    std::string_view mantissa = s;
    long exponent = 0;
    if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
        mantissa = s.substr(0, epos);
        std::string_view exp = s.substr(epos + 1);
        bool exp_neg = false;
        if (!exp.empty() && (exp.front() == '+' || exp.front() == '-')) {
            exp_neg = exp.front() == '-';
            exp.remove_prefix(1);
        }
        if (!all_digits(exp) || exp.size() > 6) return fail();
        for (char c : exp) exponent = exponent * 10 + (c - '0');
        if (exp_neg) exponent = -exponent;
    }

    std::string_view whole = mantissa;
    std::string_view frac;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        whole = mantissa.substr(0, dot);
        frac = mantissa.substr(dot + 1);
        if (whole.empty() && frac.empty()) return fail();
        if (!whole.empty() && !all_digits(whole)) return fail();
        if (!frac.empty() && !all_digits(frac)) return fail();
    } else {
        if (!all_digits(whole)) return fail();
    }

    Int num = whole.empty() ? Int(0) : parse_unsigned_int(whole);
    Int den = 1;
    for (char c : frac) {
        num = num * 10 + (c - '0');
        den *= 10;
    }
    long shift = exponent;
    while (shift > 0) { num *= 10; --shift; }
    while (shift < 0) { den *= 10; ++shift; }

    Rational r(num, den);
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) {
    const Int& num = boost::multiprecision::numerator(value);
    const Int& den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational rational_pow(const Rational& base, unsigned exp) {
    // 0^0 = 1 keeps d^0(x, x) = 1; the degree-0 coefficient term is a
    // bare a_0(x, y) everywhere, including on the diagonal.
    Rational result = 1;
    Rational factor = base;
    unsigned e = exp;
    while (e > 0) {
        if (e & 1u) result *= factor;
        e >>= 1u;
        if (e > 0) factor *= factor;
    }
    return result;
}

Int floor_nth_root(const Int& value, unsigned n) {
    if (value < 0) throw InputError("floor_nth_root: negative radicand");
    if (n == 0) throw InputError("floor_nth_root: zero index");
    if (n == 1 || value <= 1) return value;

    // Newton iteration on integers; starts above the root and decreases.
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(value)) + 1;
    Int x = Int(1) << (bits / n + 1);
    while (true) {
        Int xn1 = 1;
        for (unsigned i = 0; i + 1 < n; ++i) xn1 *= x;
        Int next = ((n - 1) * x + value / xn1) / n;
        if (next >= x) break;
        x = next;
    }
    // x is within one step of the root; settle exactly.
    auto pow_n = [n](const Int& b) {
        Int p = 1;
        for (unsigned i = 0; i < n; ++i) p *= b;
        return p;
    };
    while (pow_n(x) > value) --x;
    while (pow_n(x + 1) <= value) ++x;
    return x;
}

}  // namespace polycontract

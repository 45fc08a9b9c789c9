#include "eqtop/rational.hpp"

#include <cctype>

#include "eqtop/error.hpp"

namespace eqtop {

namespace {

bool is_integer_text(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den) || den.front() == '-' || den.front() == '+')
        throw Error("malformed rational '" + std::string(text) + "'");
    if (num.front() == '+') num.remove_prefix(1);
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string format_rational(const Rational& value) {
    return value.get_str(10);
}

}  // namespace eqtop

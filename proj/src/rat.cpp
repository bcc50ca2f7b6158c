#include "sgc/rat.hpp"

#include <cctype>
#include <cstdlib>

namespace sgc {

std::string rat_to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rat parse_rational(const std::string& text) {
    if (text.empty()) throw Error(Errc::ParseError, "empty rational");
    auto parse_int = [](const std::string& s) -> std::int64_t {
        std::size_t pos = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(s, &pos);
        } catch (const std::exception&) {
            throw Error(Errc::ParseError, "bad rational component '" + s + "'");
        }
        if (pos != s.size()) throw Error(Errc::ParseError, "bad rational component '" + s + "'");
        return v;
    };
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::int64_t num = parse_int(text.substr(0, slash));
        std::int64_t den = parse_int(text.substr(slash + 1));
        if (den == 0) throw Error(Errc::ParseError, "zero denominator in '" + text + "'");
        return Rat(num, den);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string head = text.substr(0, dot);
        std::string tail = text.substr(dot + 1);
        if (tail.empty()) return Rat(parse_int(head.empty() ? "0" : head));
        for (char c : tail)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw Error(Errc::ParseError, "bad decimal '" + text + "'");
        bool negative = !head.empty() && head[0] == '-';
        std::int64_t whole = head.empty() || head == "-" ? 0 : parse_int(head);
        std::int64_t den = 1;
        for (std::size_t i = 0; i < tail.size(); ++i) {
            if (den > 1000000000000000LL) throw Error(Errc::ParseError, "decimal too long '" + text + "'");
            den *= 10;
        }
        std::int64_t frac = parse_int(tail);
        std::int64_t num = (negative ? -1 : 1) * (std::llabs(whole) * den + frac);
        return Rat(num, den);
    }
    return Rat(parse_int(text));
}

} // namespace sgc

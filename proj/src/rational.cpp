#include "tpa/rational.hpp"

#include <cctype>

namespace tpa {

std::optional<Rat> parse_rat(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::size_t pos = 0;
    bool neg = false;
    if (text[pos] == '-' || text[pos] == '+') {
        neg = text[pos] == '-';
        ++pos;
    }
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        return std::nullopt;

    BigInt ipart = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        ipart = ipart * 10 + (text[pos] - '0');
        ++pos;
    }
    Rat value(ipart);
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        BigInt frac = 0, scale = 1;
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            return std::nullopt;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            frac = frac * 10 + (text[pos] - '0');
            scale *= 10;
            ++pos;
        }
        value += Rat(frac, scale);
    } else if (pos < text.size() && text[pos] == '/') {
        ++pos;
        BigInt den = 0;
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            return std::nullopt;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            den = den * 10 + (text[pos] - '0');
            ++pos;
        }
        if (den == 0) return std::nullopt;
        value = Rat(ipart, den);
    }
    if (pos != text.size()) return std::nullopt;
    return neg ? Rat(-value) : value;
}

std::string rat_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string rat_to_smt(const Rat& r) {
    if (r < 0) return "(- " + rat_to_smt(Rat(-r)) + ")";
    if (denominator(r) == 1) return numerator(r).str();
    return "(/ " + numerator(r).str() + " " + denominator(r).str() + ")";
}

} // namespace tpa

#include "mpg/rational.hpp"

#include <cctype>

namespace mpg {

std::optional<Rat> parse_rat(std::string_view text) {
    auto parse_int = [](std::string_view s) -> std::optional<Int> {
        if (s.empty()) return std::nullopt;
        bool neg = false;
        size_t i = 0;
        if (s[0] == '-') {
            neg = true;
            i = 1;
            if (s.size() == 1) return std::nullopt;
        }
        Int v = 0;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
            v = v * 10 + (s[i] - '0');
        }
        return neg ? Int(-v) : v;
    };
    size_t slash = text.find('/');
    if (slash == std::string_view::npos) {
        auto n = parse_int(text);
        if (!n) return std::nullopt;
        return Rat(*n);
    }
    auto n = parse_int(text.substr(0, slash));
    auto d = parse_int(text.substr(slash + 1));
    if (!n || !d || *d <= 0) return std::nullopt;
    return Rat(*n, *d);
}

std::pair<Rat, Rat> bounded_den_neighbors(const Rat& x, const Int& max_den) {
    if (max_den < 1) throw std::invalid_argument("bounded_den_neighbors: max_den < 1");
    if (rat_den(x) <= max_den) return {x, x};

    // Shift into [0,1); an integer shift leaves denominators unchanged.
    Int shift = floor_rat(x);
    Int a = rat_num(x) - shift * rat_den(x);  // 0 < a < b here
    Int b = rat_den(x);

    // Continued-fraction convergents of a/b = [0; c1, c2, ...] until the
    // denominator bound is exceeded, then the best semiconvergent on the
    // opposite side. prev/cur start as the formal convergents 1/0 and 0/1;
    // the Euclid walk on (b, a) yields c1, c2, ...
    Int h_prev = 1, k_prev = 0;
    Int h = 0, k = 1;
    Int num = b, den = a;
    while (true) {
        Int coeff = num / den;
        Int rem = num % den;
        Int h_next = coeff * h + h_prev;
        Int k_next = coeff * k + k_prev;
        if (k_next > max_den) {
            Int t = (max_den - k_prev) / k;
            Int h_semi = h_prev + t * h;
            Int k_semi = k_prev + t * k;
            Rat conv(h + shift * k, k);
            Rat semi(h_semi + shift * k_semi, k_semi);
            return conv <= x ? std::make_pair(conv, semi) : std::make_pair(semi, conv);
        }
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        if (rem == 0) {
            // Exact representation within the bound: unreachable given
            // den(x) > max_den, but keeps the walk well defined.
            Rat exact(h + shift * k, k);
            return {exact, exact};
        }
        num = den;
        den = rem;
    }
}

}  // namespace mpg

// Run-length shorthand for inputs: "a^7 b a^56" expands to the raw string
// with seven a's, one b and fifty-six a's. Member strings grow as 8^(n+1),
// so the shorthand is accepted everywhere raw strings are; expansion is
// capped to keep accidental inputs bounded.

#pragma once

#include <charconv>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace afa {

inline constexpr std::size_t default_expansion_cap = 10'000'000;

// True when the text is already a raw string over {a, b}.
inline bool is_raw_input(std::string_view text) {
    for (char c : text)
        if (c != 'a' && c != 'b') return false;
    return true;
}

// Expands whitespace-separated tokens of the form `a`, `b`, `a^N`, `b^N`.
inline std::string expand_runlength(std::string_view text, std::size_t cap = default_expansion_cap) {
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == ' ' || text[i] == '\t' || text[i] == '\n') {
            ++i;
            continue;
        }
        const char symbol = text[i];
        if (symbol != 'a' && symbol != 'b')
            throw std::invalid_argument("expand_runlength: token must start with 'a' or 'b' (position " +
                                        std::to_string(i) + ")");
        ++i;
        unsigned long long count = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            const char* begin = text.data() + i;
            const char* end = text.data() + text.size();
            auto [ptr, ec] = std::from_chars(begin, end, count);
            if (ec != std::errc{} || ptr == begin)
                throw std::invalid_argument("expand_runlength: malformed repeat count at position " +
                                            std::to_string(i));
            i += static_cast<std::size_t>(ptr - begin);
        }
        if (out.size() + count > cap)
            throw std::invalid_argument("expand_runlength: expansion exceeds cap of " +
                                        std::to_string(cap) + " symbols");
        out.append(static_cast<std::size_t>(count), symbol);
    }
    return out;
}

// Accepts either form; shorthand is anything containing a non-{a,b} character.
inline std::string expand_input(std::string_view text, std::size_t cap = default_expansion_cap) {
    return is_raw_input(text) ? std::string(text) : expand_runlength(text, cap);
}

// Renders a raw string as shorthand, one token per symbol run.
inline std::string render_runlength(std::string_view raw) {
    std::string out;
    std::size_t i = 0;
    while (i < raw.size()) {
        const char symbol = raw[i];
        if (symbol != 'a' && symbol != 'b')
            throw std::invalid_argument("render_runlength: raw string must be over {a, b}");
        std::size_t run = 0;
        while (i < raw.size() && raw[i] == symbol) {
            ++run;
            ++i;
        }
        if (!out.empty()) out += ' ';
        out += symbol;
        if (run > 1) out += "^" + std::to_string(run);
    }
    return out;
}

}  // namespace afa

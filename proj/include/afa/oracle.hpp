// Membership oracles for unary languages L ⊆ {a}*. An oracle answers, for
// index i, whether a^i belongs to L; the encoded machine construction only
// ever consumes these answers as signs ±1.
//
// Sources: a few built-in languages, an explicit bit list, or a bit file
// (one line of ASCII '0'/'1', character i giving the membership of a^i).
// Queries beyond the end of an explicit list either default to non-member
// or raise, depending on the configured tail policy.

#pragma once

#include <cstddef>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace afa {

class LanguageOracle {
public:
    enum class TailPolicy { NonMember, Error };

    static LanguageOracle empty_language() {
        return LanguageOracle("empty", [](unsigned long long) { return false; });
    }

    static LanguageOracle full_language() {
        return LanguageOracle("all", [](unsigned long long) { return true; });
    }

    static LanguageOracle even_lengths() {
        return LanguageOracle("even", [](unsigned long long i) { return i % 2 == 0; });
    }

    static LanguageOracle explicit_bits(std::vector<bool> bits, TailPolicy tail = TailPolicy::NonMember) {
        std::string name = "bits:";
        for (bool b : bits) name += b ? '1' : '0';
        return LanguageOracle(std::move(name),
                              [bits = std::move(bits), tail](unsigned long long i) {
                                  if (i < bits.size()) return static_cast<bool>(bits[i]);
                                  if (tail == TailPolicy::Error)
                                      throw std::out_of_range(
                                          "LanguageOracle: membership index beyond supplied bits");
                                  return false;
                              });
    }

    static LanguageOracle bit_file(const std::string& path, TailPolicy tail = TailPolicy::NonMember) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("LanguageOracle: cannot open bit file '" + path + "'");
        std::string line;
        std::getline(in, line);
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        std::vector<bool> bits;
        bits.reserve(line.size());
        for (char c : line) {
            if (c == '0')
                bits.push_back(false);
            else if (c == '1')
                bits.push_back(true);
            else
                throw std::runtime_error("LanguageOracle: bit file '" + path +
                                         "' contains a character other than 0/1");
        }
        LanguageOracle oracle = explicit_bits(std::move(bits), tail);
        oracle.name_ = "file:" + path;
        return oracle;
    }

    static LanguageOracle builtin(const std::string& name) {
        if (name == "empty") return empty_language();
        if (name == "all") return full_language();
        if (name == "even") return even_lengths();
        throw std::invalid_argument("LanguageOracle: unknown builtin '" + name + "'");
    }

    bool member(unsigned long long i) const { return member_(i); }
    const std::string& name() const { return name_; }

private:
    LanguageOracle(std::string name, std::function<bool(unsigned long long)> member)
        : name_(std::move(name)), member_(std::move(member)) {}

    std::string name_;
    std::function<bool(unsigned long long)> member_;
};

// +1 if a^i is a member, −1 otherwise.
inline int membership_sign(const LanguageOracle& oracle, unsigned long long i) {
    return oracle.member(i) ? 1 : -1;
}

}  // namespace afa

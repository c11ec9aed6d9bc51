// Recognizer for the language of geometrically growing a-blocks
//   a^7 b a^56 b a^448 b ... (each block eight times the previous one),
// built over the exact rational backend, plus the closed-form acceptance
// oracle used to cross-check every simulation.
//
// A run tracks two 3-dimensional integer counters through their tensor
// squares: the diff counter compares each block against eight times its
// predecessor, and the carry counter transports the 8·t_j reference into the
// next block. The squared differences accumulate into a single sum entry
// that is zero exactly on members; the right marker turns that sum into the
// final vector (1, k·sum, −k·sum, 0, ..., 0), so the machine accepts with
// probability 1/(1 + 2k·sum).

#pragma once

#include <charconv>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "afa/affine.hpp"
#include "afa/gadgets.hpp"
#include "afa/machine.hpp"

namespace afa::powereq {

inline constexpr long first_block_length = 7;
inline constexpr long block_growth_factor = 8;
inline constexpr int default_max_exponent = 6;

// Lengths of the b-delimited a-blocks of an input, in order. A string with
// n separators decomposes into n + 1 counts; empty blocks are allowed.
struct BlockDecomposition {
    std::vector<long long> counts;

    friend bool operator==(const BlockDecomposition&, const BlockDecomposition&) = default;
};

inline BlockDecomposition blocks(std::string_view x) {
    BlockDecomposition d;
    long long current = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 'a') {
            ++current;
        } else if (x[i] == 'b') {
            d.counts.push_back(current);
            current = 0;
        } else {
            throw std::invalid_argument("blocks: unexpected symbol '" + std::string(1, x[i]) +
                                        "' at position " + std::to_string(i));
        }
    }
    d.counts.push_back(current);
    return d;
}

inline std::string join(const BlockDecomposition& d) {
    std::string out;
    for (std::size_t j = 0; j < d.counts.size(); ++j) {
        if (j > 0) out += 'b';
        out.append(static_cast<std::size_t>(d.counts[j]), 'a');
    }
    return out;
}

// Cumulative mismatch (t_0 − 7)² + Σ_j (t_j − 8·t_{j−1})²; zero exactly on
// members of the language.
inline mpz_class mismatch_sum(const BlockDecomposition& d) {
    mpz_class sum = 0;
    mpz_class expected = first_block_length;
    for (long long count : d.counts) {
        mpz_class diff = to_mpz(count) - expected;
        sum += diff * diff;
        expected = block_growth_factor * to_mpz(count);
    }
    return sum;
}

inline bool is_member(std::string_view x) { return mismatch_sum(blocks(x)) == 0; }

// The unique member with n separators: blocks 7, 56, ..., 7·8^n. Its total
// a-count is 8^(n+1) − 1.
inline std::string member_string(int n, int max_exponent = default_max_exponent) {
    if (n < 0 || n > max_exponent)
        throw std::invalid_argument("member_string: block exponent out of range (max " +
                                    std::to_string(max_exponent) + ")");
    std::string out;
    long block = first_block_length;
    for (int j = 0; j <= n; ++j) {
        if (j > 0) out += 'b';
        out.append(static_cast<std::size_t>(block), 'a');
        block *= block_growth_factor;
    }
    return out;
}

// Controlled mutations for producing non-members with known mismatch:
//   "block<j>+<d>" / "block<j>-<d>"  adjust the a-count of block j,
//   "+b"                             append an empty block,
//   "-b"                             merge the last two blocks.
inline BlockDecomposition mutate(const BlockDecomposition& d, std::string_view spec) {
    BlockDecomposition out = d;
    if (spec == "+b") {
        out.counts.push_back(0);
        return out;
    }
    if (spec == "-b") {
        if (out.counts.size() < 2) throw std::invalid_argument("mutate: no separator to remove");
        const long long last = out.counts.back();
        out.counts.pop_back();
        out.counts.back() += last;
        return out;
    }
    constexpr std::string_view prefix = "block";
    if (spec.substr(0, prefix.size()) != prefix)
        throw std::invalid_argument("mutate: unrecognized spec '" + std::string(spec) + "'");
    std::string_view rest = spec.substr(prefix.size());
    std::size_t block_index = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), block_index);
    if (ec != std::errc{} || ptr == rest.data() + rest.size() || (*ptr != '+' && *ptr != '-'))
        throw std::invalid_argument("mutate: unrecognized spec '" + std::string(spec) + "'");
    const bool add = *ptr == '+';
    std::string_view amount_text(ptr + 1, rest.data() + rest.size() - (ptr + 1));
    long long amount = 0;
    auto [ptr2, ec2] = std::from_chars(amount_text.data(), amount_text.data() + amount_text.size(), amount);
    if (ec2 != std::errc{} || ptr2 != amount_text.data() + amount_text.size())
        throw std::invalid_argument("mutate: unrecognized spec '" + std::string(spec) + "'");
    if (block_index >= out.counts.size())
        throw std::invalid_argument("mutate: block index out of range");
    long long& count = out.counts[block_index];
    count += add ? amount : -amount;
    if (count < 0) throw std::invalid_argument("mutate: block length would become negative");
    return out;
}

// Entry ranges of the 20-dimensional state vector: two 9-entry tensor-square
// blocks, the mismatch accumulator, and the balance entry.
struct Layout {
    std::size_t diff_block_begin = 0;
    std::size_t carry_block_begin = 9;
    std::size_t block_span = 9;
    std::size_t sum_entry = 18;
    std::size_t balance_entry = 19;

    static Layout standard() { return Layout{}; }
};

struct PowerEqMachine {
    AfaMachine<Rational> machine;
    long k;
    Layout layout;
};

namespace detail {

using Mat = Matrix<Rational>;

// (1, a, b) → (1, b − a, 0): forms the block difference and clears the
// counted entry so the next block starts fresh.
inline Mat diff_and_clear() {
    return matrix_from<Rational>({{1, 0, 0}, {0, -1, 1}, {0, 0, 0}});
}

inline constexpr std::size_t linear_dim = 19;
inline constexpr std::size_t squared_diff_entry = 4;  // (t_j − 8·t_{j−1})² inside the diff block

// Steps 1 and 2 of the separator update, shared by 'b' and the right
// marker: form the difference inside the diff block, then add its square
// into the sum entry.
inline Mat subtract_then_accumulate() {
    const Mat u = diff_and_clear();
    Mat sub = block_diag<Rational>({tensor_op(u, u), Mat::identity(9), Mat::identity(1)});
    Mat acc = Mat::identity(linear_dim);
    acc(18, squared_diff_entry) = 1;
    return matmul(acc, sub);
}

}  // namespace detail

// Constructs the recognizer for a given error parameter k ≥ 2. All four
// operators are integer matrices; only the right marker depends on k.
inline PowerEqMachine build_machine(long k) {
    if (k < 2) throw std::invalid_argument("build_machine: k must be at least 2");
    using detail::Mat;
    constexpr std::size_t n = detail::linear_dim;

    // Left marker: from the initial basis state, load the diff counter with
    // (1, 7, 0), the carry counter with (1, 0, 0) and clear the sum.
    Mat left(n, n);
    {
        const Vector<Rational> diff0 = vector_from<Rational>({1, first_block_length, 0});
        const Vector<Rational> carry0 = vector_from<Rational>({1, 0, 0});
        const Vector<Rational> dd = tensor_vec(diff0, diff0);
        const Vector<Rational> cc = tensor_vec(carry0, carry0);
        for (std::size_t i = 0; i < 9; ++i) {
            left(i, 0) = dd[i];
            left(9 + i, 0) = cc[i];
        }
    }

    // 'a': count the block length into the diff counter and eight times the
    // block length into the carry counter, through their tensor squares.
    const Mat count_diff = count_by<Rational>(1, 0, 2);
    const Mat count_carry = count_by<Rational>(block_growth_factor, 0, 1);
    const Mat a_op =
        block_diag<Rational>({tensor_op(count_diff, count_diff), tensor_op(count_carry, count_carry),
                              Mat::identity(1)});

    // 'b': after difference and accumulation, move the carry square into the
    // diff block and reset the carry counter to (1, 0, 0).
    Mat copy(n, n);
    for (std::size_t i = 0; i < 9; ++i) {
        copy(i, 9 + i) = 1;
        copy(9 + i, 9 + i) = 1;
    }
    copy(18, 18) = 1;

    Mat reset(n, n);
    for (std::size_t i = 0; i < 9; ++i) reset(i, i) = 1;
    reset(9, 9) = 1;  // carry square collapses onto its pinned first entry
    reset(18, 18) = 1;

    const Mat b_op = matmul(reset, matmul(copy, detail::subtract_then_accumulate()));

    // Right marker: one more difference/accumulate, then route the finished
    // sum into the final form (1, k·sum, −k·sum, 0, ..., 0).
    Mat final_form(n, n);
    final_form(0, 0) = 1;
    final_form(1, 18) = k;
    final_form(2, 18) = -k;
    const Mat right = matmul(final_form, detail::subtract_then_accumulate());

    AfaMachine<Rational> machine("ab", {affinize(a_op), affinize(b_op)}, affinize(left),
                                 affinize(right), 0, {0}, NumericField::exact_rational());
    return PowerEqMachine{std::move(machine), k, Layout::standard()};
}

// Closed-form acceptance probability 1/(1 + 2k·mismatch): the analytic
// oracle the simulator is checked against.
inline Rational predicted_acceptance(std::string_view x, long k) {
    const mpz_class mismatch = mismatch_sum(blocks(x));
    return Rational(1) / Rational(1 + 2 * k * mismatch);
}

}  // namespace afa::powereq

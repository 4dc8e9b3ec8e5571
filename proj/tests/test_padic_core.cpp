#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "padix/padic_int.hpp"
#include "padix/primality.hpp"
#include "test_util.hpp"

using namespace padix;
using testutil::BigInt;
using testutil::pow_big;
using testutil::value_of_digits;

TEST_CASE("from_natural produces base-p digits") {
    const PAdicInt x = PAdicInt::from_natural(12, 3, 5);
    CHECK(x.digits() == std::vector<std::uint64_t>{0, 1, 1, 0, 0});
    CHECK(render(x, RenderMode::trimmed, RenderStyle::compact) == "110");

    const PAdicInt z = PAdicInt::from_natural(0, 5, 8);
    CHECK(z.is_zero());
    CHECK(z.digit_count() == 0);
    CHECK(z.digits() == std::vector<std::uint64_t>(8, 0));

    const PAdicInt y = PAdicInt::from_natural(40, 3, 4);
    CHECK(y.digits() == std::vector<std::uint64_t>{1, 1, 1, 1});
    CHECK(render(y, RenderMode::trimmed, RenderStyle::compact) == "1111");
}

TEST_CASE("from_natural reduces mod p^N and matches big-integer conversion") {
    std::mt19937_64 rng(601);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t p = std::array<std::uint64_t, 4>{2, 3, 7, 31}[trial % 4];
        const std::size_t n = 1 + trial % 9;
        const std::uint64_t value = rng() >> (trial % 30);
        const PAdicInt x = PAdicInt::from_natural(value, p, n);
        const BigInt expected = BigInt(value) % pow_big(p, n);
        CHECK(value_of_digits(x.digits(), p) == expected);
    }
}

TEST_CASE("construction rejects bad parameters") {
    CHECK_THROWS_AS(PAdicInt::from_natural(1, 4, 3), std::invalid_argument);
    CHECK_THROWS_AS(PAdicInt::from_natural(1, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(PAdicInt::from_natural(1, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(PAdicInt::from_digits({0, 3}, 3), std::invalid_argument);
    // digit arithmetic relies on p fitting in 63 bits
    CHECK_THROWS_AS(PAdicInt::from_natural(1, (std::uint64_t{1} << 63), 2),
                    std::invalid_argument);
}

TEST_CASE("add matches the worked base-3 example with its carry") {
    const PAdicInt a = PAdicInt::from_natural(21, 3, 4);  // 210
    const PAdicInt b = PAdicInt::from_natural(9, 3, 4);   // 100
    const auto [value, trace] = add(a, b);
    CHECK(render(value, RenderMode::trimmed, RenderStyle::compact) == "1010");
    CHECK(trace.count() == 1);
    CHECK(trace.positions == std::vector<std::size_t>{2});
}

TEST_CASE("add identity and full cascade") {
    const PAdicInt x = PAdicInt::from_natural(1234, 5, 7);
    const auto [same, trace] = add(x, PAdicInt::zero(5, 7));
    CHECK(same == x);
    CHECK(trace.count() == 0);

    // base 2, N=3: 111 + 001 wraps to 000 carrying through every column
    const auto [wrapped, cascade] =
        add(PAdicInt::from_natural(7, 2, 3), PAdicInt::from_natural(1, 2, 3));
    CHECK(wrapped.is_zero());
    CHECK(cascade.positions == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("add is commutative and associative as residues") {
    std::mt19937_64 rng(602);
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint64_t p = trial % 2 ? 3 : 13;
        const std::size_t n = 6;
        const PAdicInt a = PAdicInt::from_natural(rng(), p, n);
        const PAdicInt b = PAdicInt::from_natural(rng(), p, n);
        const PAdicInt c = PAdicInt::from_natural(rng(), p, n);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
    }
}

TEST_CASE("carry trace equals schoolbook carry positions") {
    // Independent oracle: plain base-p addition written out in the test.
    std::mt19937_64 rng(603);
    for (int trial = 0; trial < 300; ++trial) {
        const std::uint64_t p = std::array<std::uint64_t, 3>{2, 5, 11}[trial % 3];
        const std::size_t n = 1 + trial % 12;
        const std::uint64_t av = rng() >> 1, bv = rng() >> 1;  // < 2^63
        const PAdicInt a = PAdicInt::from_natural(av, p, n);
        const PAdicInt b = PAdicInt::from_natural(bv, p, n);

        std::vector<std::size_t> expected;
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t s = a.digit(i) + b.digit(i) + carry;
            carry = s >= p ? 1 : 0;
            if (carry) expected.push_back(i);
        }

        const auto [value, trace] = add(a, b);
        CHECK(trace.positions == expected);
        CHECK(value_of_digits(value.digits(), p) ==
              (BigInt(av) + bv) % pow_big(p, n));
    }
}

TEST_CASE("from_natural is additive below p^N") {
    const std::uint64_t p = 7;
    const std::size_t n = 6;
    std::mt19937_64 rng(604);
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint64_t cap = 117648;  // 7^6 / 2
        const std::uint64_t a = rng() % cap, b = rng() % cap;
        CHECK(PAdicInt::from_natural(a, p, n) + PAdicInt::from_natural(b, p, n) ==
              PAdicInt::from_natural(a + b, p, n));
    }
}

TEST_CASE("mul_by_natural") {
    const PAdicInt a = PAdicInt::from_natural(24, 3, 5);  // 220
    CHECK(render(mul_by_natural(a, 5), RenderMode::trimmed, RenderStyle::compact) ==
          "11110");
    CHECK(mul_by_natural(a, 1) == a);
    CHECK(mul_by_natural(a, 0).is_zero());

    const PAdicInt one = PAdicInt::one(5, 4);
    for (std::uint64_t m : {0ull, 1ull, 17ull, 624ull, 625ull, 626ull}) {
        CHECK(mul_by_natural(one, m) == PAdicInt::from_natural(m, 5, 4));
    }

    // against the big-integer oracle, with multipliers past 32 bits
    std::mt19937_64 rng(605);
    for (int trial = 0; trial < 100; ++trial) {
        const PAdicInt x = PAdicInt::from_natural(rng(), 11, 9);
        const std::uint64_t m = rng();
        CHECK(value_of_digits(mul_by_natural(x, m).digits(), 11) ==
              value_of_digits(x.digits(), 11) * m % pow_big(11, 9));
    }
}

TEST_CASE("power_of_p") {
    CHECK(PAdicInt::power_of_p(0, 7, 4) == PAdicInt::one(7, 4));
    const PAdicInt nine = PAdicInt::power_of_p(2, 3, 4);
    CHECK(render(nine, RenderMode::trimmed, RenderStyle::compact) == "100");
    CHECK(value_of_digits(nine.digits(), 3) == 9);
    CHECK(PAdicInt::power_of_p(4, 3, 4).is_zero());
    CHECK(PAdicInt::power_of_p(9, 3, 4).is_zero());
    for (std::size_t k = 0; k < 6; ++k) {
        CHECK(PAdicInt::power_of_p(k, 5, 6).digit_count() == k + 1);
    }
}

TEST_CASE("digit_count") {
    CHECK(PAdicInt::from_natural(39, 3, 6).digit_count() == 4);  // 1110
    CHECK(PAdicInt::zero(3, 6).digit_count() == 0);
    CHECK(PAdicInt::one(3, 6).digit_count() == 1);
}

TEST_CASE("render modes and styles") {
    const PAdicInt x = PAdicInt::from_natural(12, 3, 5);
    CHECK(render(x, RenderMode::trimmed, RenderStyle::compact) == "110");
    CHECK(render(x, RenderMode::fixed_width, RenderStyle::compact) == "00110");
    CHECK(render(x, RenderMode::fixed_width, RenderStyle::list) == "0,0,1,1,0");
    CHECK(render(x, RenderMode::trimmed, RenderStyle::list) == "1,1,0");
    CHECK(render(PAdicInt::zero(3, 4), RenderMode::trimmed, RenderStyle::compact) == "0");
    CHECK(render(PAdicInt::zero(3, 4), RenderMode::trimmed, RenderStyle::list) == "0");

    // digits 10..35 take letters
    const PAdicInt y = PAdicInt::from_natural(35, 31, 3);  // = 1*31 + 4
    CHECK(render(y, RenderMode::trimmed, RenderStyle::compact) == "14");
    const PAdicInt top = PAdicInt::from_natural(30, 31, 2);
    CHECK(render(top, RenderMode::trimmed, RenderStyle::compact) == "u");

    CHECK_THROWS_AS(render(PAdicInt::one(37, 3), RenderMode::trimmed, RenderStyle::compact),
                    std::invalid_argument);
    CHECK(render(PAdicInt::from_natural(38, 37, 3), RenderMode::trimmed,
                 RenderStyle::list) == "1,1");
}

TEST_CASE("parse_digits inverts render") {
    CHECK(parse_digits("110", 3, 5, RenderStyle::compact) ==
          PAdicInt::from_natural(12, 3, 5));
    CHECK(parse_digits("0,0,1,1,0", 3, 5, RenderStyle::list) ==
          PAdicInt::from_natural(12, 3, 5));
    CHECK(parse_digits("0", 3, 4, RenderStyle::compact).is_zero());

    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t p = std::array<std::uint64_t, 3>{2, 3, 23}[trial % 3];
        const PAdicInt x = PAdicInt::from_natural(rng(), p, 1 + trial % 10);
        for (RenderStyle style : {RenderStyle::compact, RenderStyle::list}) {
            for (RenderMode mode : {RenderMode::trimmed, RenderMode::fixed_width}) {
                CHECK(parse_digits(render(x, mode, style), p, x.precision(), style) == x);
            }
        }
    }

    // round-trip starting from the string side, trimmed compact
    for (const char* s : {"1", "212", "1002", "222222"}) {
        CHECK(render(parse_digits(s, 3, 8, RenderStyle::compact), RenderMode::trimmed,
                     RenderStyle::compact) == s);
    }

    CHECK_THROWS_AS(parse_digits("13", 3, 4, RenderStyle::compact), std::invalid_argument);
    CHECK_THROWS_AS(parse_digits("", 3, 4, RenderStyle::compact), std::invalid_argument);
    CHECK_THROWS_AS(parse_digits("1,x", 3, 4, RenderStyle::list), std::invalid_argument);
    CHECK_THROWS_AS(parse_digits("10101", 3, 4, RenderStyle::compact),
                    std::invalid_argument);  // longer than the precision
}

TEST_CASE("mismatched operands are rejected") {
    CHECK_THROWS_AS(add(PAdicInt::one(3, 4), PAdicInt::one(5, 4)), std::invalid_argument);
    CHECK_THROWS_AS(add(PAdicInt::one(3, 4), PAdicInt::one(3, 5)), std::invalid_argument);
}

TEST_CASE("digit files round-trip") {
    for (std::uint64_t p : {3ull, 41ull}) {
        const PAdicInt x = PAdicInt::from_natural(123456789, p, 12);
        std::stringstream buf;
        write_digit_file(x, buf);
        CHECK(read_digit_file(buf) == x);
    }

    // exact bytes for the compact flavor
    std::stringstream buf;
    write_digit_file(PAdicInt::from_natural(12, 3, 5), buf);
    CHECK(buf.str() == "p=3 order=msd\n00110\n");

    // header and payload validation
    std::stringstream bad1("q=3 order=msd\n110\n");
    CHECK_THROWS_AS(read_digit_file(bad1), std::runtime_error);
    std::stringstream bad2("p=3 order=lsd\n110\n");
    CHECK_THROWS_AS(read_digit_file(bad2), std::runtime_error);
    std::stringstream bad3("p=4 order=msd\n110\n");
    CHECK_THROWS_AS(read_digit_file(bad3), std::invalid_argument);
    std::stringstream bad4("p=3 order=msd\n190\n");
    CHECK_THROWS_AS(read_digit_file(bad4), std::invalid_argument);
    std::stringstream bad5("p=3 order=msd\n");
    CHECK_THROWS_AS(read_digit_file(bad5), std::runtime_error);
}

TEST_CASE("digit file on disk") {
    const auto path = std::filesystem::temp_directory_path() / "padix_test_digits.txt";
    const PAdicInt x = PAdicInt::from_natural(9999, 7, 9);
    write_digit_file(x, path);
    CHECK(read_digit_file(path) == x);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_digit_file(path), std::runtime_error);
}

TEST_CASE("primality guard") {
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7919ull, 2147483647ull}) {
        CHECK(is_prime_u64(p));
    }
    for (std::uint64_t c : {0ull, 1ull, 4ull, 1000ull, 7917ull}) {
        CHECK_FALSE(is_prime_u64(c));
    }
    // 2^61 - 1 is a Mersenne prime; 2^63 - 1 = 7^2 * 73 * 127 * ... is not
    CHECK(is_prime_u64((1ull << 61) - 1));
    CHECK_FALSE(is_prime_u64((1ull << 63) - 1));
    CHECK_THROWS_AS(require_prime((1ull << 61) + 1), std::invalid_argument);
}

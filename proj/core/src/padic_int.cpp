#include "padix/padic_int.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "digit_ops.hpp"
#include "padix/primality.hpp"

namespace padix {

namespace {

constexpr char kCompactAlphabet[] = "0123456789abcdefghijklmnopqrstuvwxyz";

void require_precision(std::size_t N) {
    if (N == 0) throw std::invalid_argument("precision must be >= 1");
}

void require_compatible(const PAdicInt& a, const PAdicInt& b) {
    if (a.prime() != b.prime()) {
        throw std::invalid_argument("prime mismatch: " + std::to_string(a.prime()) +
                                    " vs " + std::to_string(b.prime()));
    }
    if (a.precision() != b.precision()) {
        throw std::invalid_argument("precision mismatch: " + std::to_string(a.precision()) +
                                    " vs " + std::to_string(b.precision()));
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' ||
                          s.front() == '\n'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' ||
                          s.back() == '\n'))
        s.remove_suffix(1);
    return s;
}

int compact_digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
    return -1;
}

// MSD-first digit values of a textual expansion.
std::vector<std::uint64_t> scan_digit_text(std::string_view text, std::uint64_t p,
                                           RenderStyle style) {
    text = trim(text);
    if (text.empty()) throw std::invalid_argument("empty digit string");
    std::vector<std::uint64_t> msd;
    if (style == RenderStyle::compact) {
        if (p > 36) throw std::invalid_argument("compact style requires p <= 36");
        msd.reserve(text.size());
        for (char c : text) {
            int v = compact_digit_value(c);
            if (v < 0) throw std::invalid_argument(std::string("invalid digit character '") + c + "'");
            msd.push_back(static_cast<std::uint64_t>(v));
        }
    } else {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t comma = text.find(',', pos);
            std::string_view tok = trim(text.substr(
                pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
            std::uint64_t v = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
                throw std::invalid_argument("invalid digit token '" + std::string(tok) + "'");
            }
            msd.push_back(v);
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
    }
    for (std::uint64_t v : msd) {
        if (v >= p) {
            throw std::invalid_argument("digit " + std::to_string(v) +
                                        " out of range for p=" + std::to_string(p));
        }
    }
    return msd;
}

}  // namespace

PAdicInt PAdicInt::from_natural(std::uint64_t n, std::uint64_t p, std::size_t precision) {
    require_prime(p);
    require_precision(precision);
    return PAdicInt(p, detail::digits_from_u64(n, p, precision));
}

PAdicInt PAdicInt::zero(std::uint64_t p, std::size_t precision) {
    return from_natural(0, p, precision);
}

PAdicInt PAdicInt::one(std::uint64_t p, std::size_t precision) {
    return from_natural(1, p, precision);
}

PAdicInt PAdicInt::power_of_p(std::size_t k, std::uint64_t p, std::size_t precision) {
    require_prime(p);
    require_precision(precision);
    std::vector<std::uint64_t> d(precision, 0);
    if (k < precision) d[k] = 1;
    return PAdicInt(p, std::move(d));
}

PAdicInt PAdicInt::from_digits(std::vector<std::uint64_t> digits_lsb, std::uint64_t p) {
    require_prime(p);
    require_precision(digits_lsb.size());
    for (std::uint64_t d : digits_lsb) {
        if (d >= p) {
            throw std::invalid_argument("digit " + std::to_string(d) +
                                        " out of range for p=" + std::to_string(p));
        }
    }
    return PAdicInt(p, std::move(digits_lsb));
}

bool PAdicInt::is_zero() const noexcept {
    return std::all_of(digits_.begin(), digits_.end(),
                       [](std::uint64_t d) { return d == 0; });
}

std::size_t PAdicInt::digit_count() const noexcept {
    return detail::scan_digit_count(digits_);
}

AddResult add(const PAdicInt& a, const PAdicInt& b) {
    require_compatible(a, b);
    std::vector<std::uint64_t> sum = a.digits();
    CarryTrace trace;
    detail::add_into(sum, b.digits(), a.prime(), trace.positions);
    return AddResult{PAdicInt::from_digits(std::move(sum), a.prime()), std::move(trace)};
}

PAdicInt operator+(const PAdicInt& a, const PAdicInt& b) { return add(a, b).value; }

PAdicInt mul_by_natural(const PAdicInt& a, std::uint64_t m) {
    std::vector<std::uint64_t> prod = a.digits();
    detail::mul_small_into(prod, m, a.prime());
    return PAdicInt::from_digits(std::move(prod), a.prime());
}

std::string render(const PAdicInt& a, RenderMode mode, RenderStyle style) {
    if (style == RenderStyle::compact && a.prime() > 36) {
        throw std::invalid_argument("compact style requires p <= 36; use list style");
    }
    std::size_t width = mode == RenderMode::fixed_width
                            ? a.precision()
                            : std::max<std::size_t>(a.digit_count(), 1);
    std::string out;
    for (std::size_t i = width; i-- > 0;) {
        std::uint64_t d = a.digit(i);
        if (style == RenderStyle::compact) {
            out += kCompactAlphabet[d];
        } else {
            out += std::to_string(d);
            if (i != 0) out += ',';
        }
    }
    return out;
}

PAdicInt parse_digits(std::string_view text, std::uint64_t p, std::size_t precision,
                      RenderStyle style) {
    require_prime(p);
    require_precision(precision);
    std::vector<std::uint64_t> msd = scan_digit_text(text, p, style);
    if (msd.size() > precision) {
        throw std::invalid_argument("got " + std::to_string(msd.size()) +
                                    " digits but precision is " + std::to_string(precision));
    }
    std::vector<std::uint64_t> lsb(precision, 0);
    for (std::size_t i = 0; i < msd.size(); ++i) {
        lsb[msd.size() - 1 - i] = msd[i];
    }
    return PAdicInt::from_digits(std::move(lsb), p);
}

void write_digit_file(const PAdicInt& a, std::ostream& out) {
    RenderStyle style = a.prime() <= 36 ? RenderStyle::compact : RenderStyle::list;
    out << "p=" << a.prime() << " order=msd\n"
        << render(a, RenderMode::fixed_width, style) << "\n";
    if (!out) throw std::runtime_error("failed to write digit file");
}

void write_digit_file(const PAdicInt& a, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_digit_file(a, out);
}

PAdicInt read_digit_file(std::istream& in) {
    std::string header, body;
    if (!std::getline(in, header)) throw std::runtime_error("digit file: missing header line");
    if (!std::getline(in, body)) throw std::runtime_error("digit file: missing digit line");

    std::string_view h = trim(header);
    if (h.substr(0, 2) != "p=") {
        throw std::runtime_error("digit file: header must start with 'p='");
    }
    h.remove_prefix(2);
    std::size_t sp = h.find(' ');
    if (sp == std::string_view::npos) {
        throw std::runtime_error("digit file: header must be 'p=<prime> order=msd'");
    }
    std::string_view ptok = h.substr(0, sp);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(ptok.data(), ptok.data() + ptok.size(), p);
    if (ec != std::errc{} || ptr != ptok.data() + ptok.size()) {
        throw std::runtime_error("digit file: bad prime token '" + std::string(ptok) + "'");
    }
    if (trim(h.substr(sp + 1)) != "order=msd") {
        throw std::runtime_error("digit file: header must end with 'order=msd'");
    }
    require_prime(p);

    std::string_view digits = trim(body);
    RenderStyle style = (p > 36 || digits.find(',') != std::string_view::npos)
                            ? RenderStyle::list
                            : RenderStyle::compact;
    std::vector<std::uint64_t> msd = scan_digit_text(digits, p, style);
    std::vector<std::uint64_t> lsb(msd.rbegin(), msd.rend());
    return PAdicInt::from_digits(std::move(lsb), p);
}

PAdicInt read_digit_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_digit_file(in);
}

}  // namespace padix

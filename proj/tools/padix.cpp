// padix -- exact p-adic integer arithmetic, series summation, rationality
// detection, and structural verification from the command line.
//
// Exit codes: 0 success / all checks pass; 1 verification failure or
// --expect mismatch; 2 usage or configuration error.

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "padix/analysis.hpp"
#include "padix/errors.hpp"
#include "padix/padic_int.hpp"
#include "padix/primality.hpp"
#include "padix/rational.hpp"
#include "padix/series.hpp"
#include "padix/valuation.hpp"
#include "padix/version.hpp"

namespace {

using namespace padix;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

unsigned threads_from_env() {
    const char* raw = std::getenv("PADIX_THREADS");
    if (raw == nullptr || *raw == '\0') return 1;
    char* end = nullptr;
    long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 1 || v > 256) {
        throw std::invalid_argument("PADIX_THREADS must be an integer in [1, 256], got '" +
                                    std::string(raw) + "'");
    }
    return static_cast<unsigned>(v);
}

// Writes to --output when given, stdout otherwise.
class OutputTarget {
  public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot open " + path + " for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

SeriesKind parse_series(const std::string& name) {
    if (name == "alpha") return SeriesKind::alpha;
    if (name == "factorial") return SeriesKind::factorial;
    throw std::invalid_argument("unknown series '" + name + "' (alpha|factorial)");
}

// Resolves the render style, auto-switching compact to list for p > 36
// when the user left the style at its default.
RenderStyle resolve_style(const std::string& style, bool user_set, std::uint64_t p) {
    if (style == "list") return RenderStyle::list;
    if (style != "compact") {
        throw std::invalid_argument("unknown style '" + style + "' (compact|list)");
    }
    if (p > 36) {
        if (user_set) {
            throw std::invalid_argument("compact style requires p <= 36; use --style list");
        }
        std::cerr << "warning: p=" << p
                  << " has no compact digit alphabet; switching to list style\n";
        return RenderStyle::list;
    }
    return RenderStyle::compact;
}

RenderMode parse_mode(const std::string& mode) {
    if (mode == "trimmed") return RenderMode::trimmed;
    if (mode == "fixed") return RenderMode::fixed_width;
    throw std::invalid_argument("unknown mode '" + mode + "' (trimmed|fixed)");
}

std::vector<std::uint64_t> parse_digit_list(const std::string& text, std::uint64_t p) {
    if (text.empty()) return {};
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        std::uint64_t v = 0;
        try {
            v = std::stoull(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("invalid digit '" + tok + "'");
        }
        if (used != tok.size()) throw std::invalid_argument("invalid digit '" + tok + "'");
        if (v >= p) {
            throw std::invalid_argument("digit " + std::to_string(v) +
                                        " out of range for p=" + std::to_string(p));
        }
        out.push_back(v);
    }
    return out;
}

std::string utc_stamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// ---- sum ------------------------------------------------------------------

struct SumConfig {
    std::string series = "alpha";
    std::uint64_t prime = 0;
    std::size_t digits = 0;
    std::int64_t upto = -1;       // -1 = full series value
    std::int64_t partials = -1;   // >= 0 = print S_0..S_partials
    std::string mode = "trimmed";
    std::string style = "compact";
    bool style_set = false;
    std::string format = "text";
    std::string output;
};

int run_sum(const SumConfig& cfg) {
    const SeriesKind kind = parse_series(cfg.series);
    const RenderMode mode = parse_mode(cfg.mode);
    const RenderStyle style = resolve_style(cfg.style, cfg.style_set, cfg.prime);
    OutputTarget out(cfg.output);

    if (cfg.partials >= 0) {
        if (cfg.format == "digitfile") {
            throw std::invalid_argument("--partials prints a list; digitfile holds one value");
        }
        auto events = stream_partial_sums(kind, cfg.prime, cfg.digits,
                                          static_cast<std::uint64_t>(cfg.partials));
        for (const auto& ev : events) {
            out.stream() << render(ev.sum, mode, style) << "\n";
        }
        return kExitPass;
    }

    PAdicInt value = cfg.upto >= 0
                         ? partial_sum(kind, cfg.prime, static_cast<std::uint64_t>(cfg.upto),
                                       cfg.digits)
                         : sum_series(kind, cfg.prime, cfg.digits, threads_from_env());
    if (cfg.format == "digitfile") {
        write_digit_file(value, out.stream());
    } else if (cfg.format == "text") {
        out.stream() << render(value, mode, style) << "\n";
    } else {
        throw std::invalid_argument("unknown format '" + cfg.format + "' (text|digitfile)");
    }
    return kExitPass;
}

// ---- rational to-padic / from-period ---------------------------------------

struct ToPadicConfig {
    std::string num = "0";
    std::string den = "1";
    std::uint64_t prime = 0;
    std::size_t digits = 0;
    std::string mode = "fixed";
    std::string style = "compact";
    bool style_set = false;
    std::string format = "text";
    std::string output;
};

int run_to_padic(const ToPadicConfig& cfg) {
    const Rational q = Rational::parse(cfg.num + "/" + cfg.den);
    const PAdicInt x = rational_to_padic(q, cfg.prime, cfg.digits);
    const RenderStyle style = resolve_style(cfg.style, cfg.style_set, cfg.prime);
    OutputTarget out(cfg.output);
    if (cfg.format == "digitfile") {
        write_digit_file(x, out.stream());
    } else if (cfg.format == "text") {
        out.stream() << render(x, parse_mode(cfg.mode), style) << "\n";
    } else {
        throw std::invalid_argument("unknown format '" + cfg.format + "' (text|digitfile)");
    }
    return kExitPass;
}

struct FromPeriodConfig {
    std::uint64_t prime = 0;
    std::string preperiod;
    std::string period;
    std::string output;
};

int run_from_period(const FromPeriodConfig& cfg) {
    require_prime(cfg.prime);
    EventualPeriod ep{parse_digit_list(cfg.preperiod, cfg.prime),
                      parse_digit_list(cfg.period, cfg.prime)};
    if (ep.period.empty()) throw std::invalid_argument("--period must list at least one digit");
    const Rational q = periodic_to_rational(canonicalize(std::move(ep)), cfg.prime);
    OutputTarget out(cfg.output);
    out.stream() << q.to_string() << "\n";
    return kExitPass;
}

// ---- period detect ----------------------------------------------------------

struct DetectConfig {
    std::string input;            // digit file
    std::string num, den = "1";   // rational source
    std::string series;           // series source
    std::uint64_t prime = 0;
    std::size_t digits = 0;
    std::uint64_t max_preperiod = 0;
    bool max_preperiod_set = false;
    std::uint64_t max_period = 0;
    bool max_period_set = false;
    std::uint64_t min_repeats = 3;
    std::string expect;  // "", "found", "none"
    bool json = false;
    std::string output;
};

int run_detect(const DetectConfig& cfg) {
    int sources = (!cfg.input.empty()) + (!cfg.num.empty()) + (!cfg.series.empty());
    if (sources != 1) {
        throw std::invalid_argument("pick exactly one digit source: --input, --num, or --series");
    }

    std::optional<PAdicInt> value;
    if (!cfg.input.empty()) {
        value = read_digit_file(std::filesystem::path(cfg.input));
        if (cfg.prime != 0 && cfg.prime != value->prime()) {
            throw std::invalid_argument("--prime " + std::to_string(cfg.prime) +
                                        " contradicts digit file (p=" +
                                        std::to_string(value->prime()) + ")");
        }
    } else {
        if (cfg.prime == 0) throw std::invalid_argument("--prime is required");
        if (cfg.digits == 0) throw std::invalid_argument("--digits is required");
        if (!cfg.num.empty()) {
            const Rational q = Rational::parse(cfg.num + "/" + cfg.den);
            value = rational_to_padic(q, cfg.prime, cfg.digits);
        } else {
            value = sum_series(parse_series(cfg.series), cfg.prime, cfg.digits,
                               threads_from_env());
        }
    }

    const std::size_t n = value->precision();
    DetectBounds bounds;
    bounds.max_preperiod = cfg.max_preperiod_set ? cfg.max_preperiod : n / 4;
    bounds.max_period = cfg.max_period_set ? cfg.max_period : std::max<std::size_t>(n / 8, 1);
    bounds.min_repeats = cfg.min_repeats;

    const DetectResult result = detect_eventual_period(value->digits(), value->prime(), bounds);

    OutputTarget out(cfg.output);
    if (cfg.json) {
        out.stream() << detect_result_to_json(result) << "\n";
    } else {
        out.stream() << "status: " << to_string(result.status) << "\n"
                     << "digits_examined: " << result.digits_examined << "\n";
        if (result.period) {
            auto join = [](const std::vector<std::uint64_t>& v) {
                std::string s;
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) s += ',';
                    s += std::to_string(v[i]);
                }
                return s;
            };
            out.stream() << "preperiod_len: " << result.period->preperiod_len() << "\n"
                         << "period_len: " << result.period->period_len() << "\n"
                         << "preperiod (lsb-first): " << join(result.period->preperiod) << "\n"
                         << "period (lsb-first): " << join(result.period->period) << "\n";
        }
    }

    if (!cfg.expect.empty()) {
        const bool want_found = cfg.expect == "found";
        const bool got_found = result.status == DetectStatus::found;
        if (want_found != got_found) {
            std::cerr << "expect mismatch: wanted " << cfg.expect << ", detector returned "
                      << to_string(result.status) << "\n";
            return kExitCheckFailed;
        }
    }
    return kExitPass;
}

// ---- verify / report --------------------------------------------------------

struct VerifyConfig {
    std::uint64_t prime = 0;
    std::string check = "all";
    std::uint64_t k_max = 100;
    std::uint64_t r_max = 3;
    std::uint64_t freeze_horizon = 0;  // 0 = minimal
    std::size_t digits = 0;            // 0 = auto-minimal
    std::uint64_t max_preperiod = 64;
    std::uint64_t max_period = 32;
    std::uint64_t min_repeats = 3;
    bool json = false;
    std::string output;
    std::optional<std::string> stamp;  // report only
};

ReportSpec to_report_spec(const VerifyConfig& cfg) {
    ReportSpec spec;
    spec.prime = cfg.prime;
    spec.precision = cfg.digits;
    spec.check_packages = cfg.check == "all" || cfg.check == "packages";
    spec.k_max = cfg.k_max;
    spec.check_prefix = cfg.check == "all" || cfg.check == "prefix";
    spec.r_max = cfg.r_max;
    spec.freeze_horizon = cfg.freeze_horizon;
    spec.check_nonperiodicity = cfg.check == "all" || cfg.check == "nonperiodicity";
    spec.bounds = DetectBounds{static_cast<std::size_t>(cfg.max_preperiod),
                               static_cast<std::size_t>(cfg.max_period),
                               static_cast<std::size_t>(cfg.min_repeats)};
    spec.stamp = cfg.stamp;
    return spec;
}

// Mirrors the auto-precision rule of build_report for the human-readable path.
std::size_t resolve_precision(const ReportSpec& spec) {
    if (spec.precision > 0) return spec.precision;
    std::size_t n = 8;
    if (spec.check_packages) {
        n = std::max(n, minimal_precision_for_packages(spec.prime, spec.k_max));
    }
    if (spec.check_prefix && spec.r_max >= 3) {
        n = std::max(n, minimal_precision_for_prefix(spec.prime, spec.r_max));
    }
    if (spec.check_nonperiodicity) {
        n = std::max(n, spec.bounds.max_preperiod +
                            spec.bounds.min_repeats * spec.bounds.max_period);
    }
    return n;
}

int run_verify(const VerifyConfig& cfg) {
    if (cfg.check != "all" && cfg.check != "packages" && cfg.check != "prefix" &&
        cfg.check != "nonperiodicity") {
        throw std::invalid_argument("unknown check '" + cfg.check +
                                    "' (packages|prefix|nonperiodicity|all)");
    }
    const ReportSpec spec = to_report_spec(cfg);
    OutputTarget out(cfg.output);

    if (cfg.json) {
        const ReportResult report = build_report(spec);
        out.stream() << report.json << "\n";
        return report.all_pass ? kExitPass : kExitCheckFailed;
    }

    const std::size_t precision = resolve_precision(spec);
    bool all_pass = true;

    if (spec.check_packages) {
        const auto records = verify_packages(spec.prime, spec.k_max, precision);
        std::size_t bad = 0;
        for (const auto& rec : records) {
            if (rec.pass) continue;
            ++bad;
            out.stream() << "packages: k=" << rec.k << " valuation=" << rec.valuation
                         << " constant=" << (rec.valuation_constant ? "yes" : "no")
                         << " carries=" << rec.carry_count
                         << " digits=" << rec.digit_count_end << " (expected "
                         << rec.digit_count_expected << ")\n";
        }
        out.stream() << "packages: " << (records.size() - bad) << "/" << records.size()
                     << " pass (k_max=" << spec.k_max << ", precision=" << precision << ")\n";
        all_pass = all_pass && bad == 0;
    }

    if (spec.check_prefix && spec.r_max >= 3) {
        const std::uint64_t horizon = spec.freeze_horizon == 0
                                          ? minimal_freeze_horizon(spec.prime, spec.r_max)
                                          : spec.freeze_horizon;
        const auto records = verify_power_prefix(spec.prime, spec.r_max, precision, horizon);
        std::size_t bad = 0;
        for (const auto& rec : records) {
            if (rec.pass) continue;
            ++bad;
            out.stream() << "prefix: r=" << rec.r << " jump=" << rec.jump << " (expected "
                         << rec.r - 1 << ") zero_run=" << rec.zero_run << " (expected >= "
                         << rec.r - 2 << ") frozen=" << (rec.frozen ? "yes" : "no") << "\n";
        }
        out.stream() << "prefix: " << (records.size() - bad) << "/" << records.size()
                     << " pass (r_max=" << spec.r_max << ", freeze_horizon=" << horizon
                     << ")\n";
        all_pass = all_pass && bad == 0;
    }

    if (spec.check_nonperiodicity) {
        const auto report = nonperiodicity_report(spec.prime, precision, spec.bounds);
        const bool pass = report.detection.status == DetectStatus::none_within_bounds;
        out.stream() << "nonperiodicity: " << to_string(report.detection.status) << " over "
                     << report.detection.digits_examined
                     << " digits (max_preperiod=" << spec.bounds.max_preperiod
                     << ", max_period=" << spec.bounds.max_period
                     << ", min_repeats=" << spec.bounds.min_repeats << ") -- "
                     << (pass ? "pass" : "FAIL") << "\n";
        all_pass = all_pass && pass;
    }

    out.stream() << (all_pass ? "PASS" : "FAIL") << "\n";
    return all_pass ? kExitPass : kExitCheckFailed;
}

int run_report(const VerifyConfig& cfg) {
    const ReportResult report = build_report(to_report_spec(cfg));
    OutputTarget out(cfg.output);
    out.stream() << report.json << "\n";
    return report.all_pass ? kExitPass : kExitCheckFailed;
}

void add_render_flags(CLI::App* sub, std::string& mode, std::string& style, bool& style_set,
                      std::string& format) {
    sub->add_option("--mode", mode, "Digit display: trimmed|fixed");
    sub->add_option("--style", style, "Digit style: compact|list")
        ->check(CLI::IsMember({"compact", "list"}))
        ->each([&style_set](const std::string&) { style_set = true; });
    sub->add_option("--format", format, "Output format: text|digitfile")
        ->check(CLI::IsMember({"text", "digitfile"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact p-adic integer arithmetic and series analysis"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    SumConfig sum_cfg;
    auto* sum = app.add_subcommand("sum", "Sum a p-adic series to N digits");
    sum->add_option("--series", sum_cfg.series, "alpha|factorial")
        ->check(CLI::IsMember({"alpha", "factorial"}));
    sum->add_option("--prime,-p", sum_cfg.prime, "Prime base p")->required();
    sum->add_option("--digits,-N", sum_cfg.digits, "Precision: digits retained")->required();
    auto* upto = sum->add_option("--upto", sum_cfg.upto, "Partial sum S_n instead of the limit")
                     ->check(CLI::NonNegativeNumber);
    auto* partials =
        sum->add_option("--partials", sum_cfg.partials, "Print S_0..S_n, one per line")
            ->check(CLI::NonNegativeNumber);
    upto->excludes(partials);
    partials->excludes(upto);
    sum->add_flag_callback("--trim", [&] { sum_cfg.mode = "trimmed"; },
                           "Shorthand for --mode trimmed");
    sum->add_flag_callback("--fixed-width", [&] { sum_cfg.mode = "fixed"; },
                           "Shorthand for --mode fixed");
    add_render_flags(sum, sum_cfg.mode, sum_cfg.style, sum_cfg.style_set, sum_cfg.format);
    sum->add_option("--output,-o", sum_cfg.output, "Write results to a file");

    auto* rational = app.add_subcommand("rational", "Rational <-> p-adic correspondence");
    rational->require_subcommand(1);

    ToPadicConfig tp_cfg;
    auto* to_padic = rational->add_subcommand("to-padic", "Expand a rational to N digits");
    to_padic->add_option("--num", tp_cfg.num, "Numerator (integer, any size)")->required();
    to_padic->add_option("--den", tp_cfg.den, "Denominator (coprime to p)");
    to_padic->add_option("--prime,-p", tp_cfg.prime, "Prime base p")->required();
    to_padic->add_option("--digits,-N", tp_cfg.digits, "Precision: digits emitted")->required();
    add_render_flags(to_padic, tp_cfg.mode, tp_cfg.style, tp_cfg.style_set, tp_cfg.format);
    to_padic->add_option("--output,-o", tp_cfg.output, "Write results to a file");

    FromPeriodConfig fp_cfg;
    auto* from_period =
        rational->add_subcommand("from-period", "Rational value of an eventually periodic expansion");
    from_period->add_option("--prime,-p", fp_cfg.prime, "Prime base p")->required();
    from_period->add_option("--preperiod", fp_cfg.preperiod,
                            "Preperiod digits, comma-separated, LSB first");
    from_period->add_option("--period", fp_cfg.period,
                            "Period digits, comma-separated, LSB first")
        ->required();
    from_period->add_option("--output,-o", fp_cfg.output, "Write results to a file");

    auto* period = app.add_subcommand("period", "Periodicity detection");
    period->require_subcommand(1);

    DetectConfig det_cfg;
    auto* detect = period->add_subcommand("detect", "Smallest eventual period of a digit stream");
    detect->add_option("--input,-i", det_cfg.input, "Digit file to scan");
    detect->add_option("--num", det_cfg.num, "Numerator of a rational source");
    detect->add_option("--den", det_cfg.den, "Denominator of a rational source");
    detect->add_option("--series", det_cfg.series, "Series source: alpha|factorial")
        ->check(CLI::IsMember({"alpha", "factorial"}));
    detect->add_option("--prime,-p", det_cfg.prime, "Prime base p");
    detect->add_option("--digits,-N", det_cfg.digits, "Digits to generate before scanning");
    detect->add_option("--max-preperiod", det_cfg.max_preperiod,
                       "Preperiod bound (default: digits/4)")
        ->each([&](const std::string&) { det_cfg.max_preperiod_set = true; });
    detect->add_option("--max-period", det_cfg.max_period, "Period bound (default: digits/8)")
        ->each([&](const std::string&) { det_cfg.max_period_set = true; });
    detect->add_option("--min-repeats", det_cfg.min_repeats,
                       "Full period copies required (default 3)");
    detect->add_option("--expect", det_cfg.expect,
                       "Exit 1 unless the outcome matches: found|none")
        ->check(CLI::IsMember({"found", "none"}));
    detect->add_flag("--json", det_cfg.json, "Emit JSON instead of text");
    detect->add_option("--output,-o", det_cfg.output, "Write results to a file");

    VerifyConfig ver_cfg;
    auto* verify = app.add_subcommand("verify", "Check package, prefix, and periodicity laws");
    verify->add_option("--prime,-p", ver_cfg.prime, "Prime base p")->required();
    verify->add_option("--check", ver_cfg.check, "packages|prefix|nonperiodicity|all")
        ->check(CLI::IsMember({"packages", "prefix", "nonperiodicity", "all"}));
    verify->add_option("--k-max", ver_cfg.k_max, "Last package index (default 100)");
    verify->add_option("--r-max", ver_cfg.r_max, "Last prefix exponent (default 3)");
    verify->add_option("--freeze-horizon", ver_cfg.freeze_horizon,
                       "Partial sums checked for fixity (default: p^r_max)");
    verify->add_option("--digits,-N", ver_cfg.digits,
                       "Precision (default: smallest sufficient for the checks)");
    verify->add_option("--max-preperiod", ver_cfg.max_preperiod,
                       "Nonperiodicity preperiod bound (default 64)");
    verify->add_option("--max-period", ver_cfg.max_period,
                       "Nonperiodicity period bound (default 32)");
    verify->add_option("--min-repeats", ver_cfg.min_repeats,
                       "Full period copies required (default 3)");
    verify->add_flag("--json", ver_cfg.json, "Emit the JSON report instead of text");
    verify->add_option("--output,-o", ver_cfg.output, "Write results to a file");

    VerifyConfig rep_cfg;
    bool rep_stamp = false;
    auto* report = app.add_subcommand("report", "Bundled JSON evidence report");
    report->add_option("--prime,-p", rep_cfg.prime, "Prime base p")->required();
    report->add_option("--k-max", rep_cfg.k_max, "Last package index (default 100)");
    report->add_option("--r-max", rep_cfg.r_max, "Last prefix exponent (default 3)");
    report->add_option("--freeze-horizon", rep_cfg.freeze_horizon,
                       "Partial sums checked for fixity (default: p^r_max)");
    report->add_option("--digits,-N", rep_cfg.digits,
                       "Precision (default: smallest sufficient for the checks)");
    report->add_option("--max-preperiod", rep_cfg.max_preperiod,
                       "Nonperiodicity preperiod bound (default 64)");
    report->add_option("--max-period", rep_cfg.max_period,
                       "Nonperiodicity period bound (default 32)");
    report->add_option("--min-repeats", rep_cfg.min_repeats,
                       "Full period copies required (default 3)");
    report->add_flag("--stamp", rep_stamp,
                     "Embed a UTC timestamp (output is then not byte-stable)");
    report->add_option("--output,-o", rep_cfg.output, "Write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (sum->parsed()) return run_sum(sum_cfg);
        if (to_padic->parsed()) return run_to_padic(tp_cfg);
        if (from_period->parsed()) return run_from_period(fp_cfg);
        if (detect->parsed()) return run_detect(det_cfg);
        if (verify->parsed()) return run_verify(ver_cfg);
        if (report->parsed()) {
            if (rep_stamp) rep_cfg.stamp = utc_stamp();
            return run_report(rep_cfg);
        }
    } catch (const InsufficientParameter& e) {
        std::cerr << "error: " << e.what() << " (minimal " << e.parameter() << " = "
                  << e.minimal() << ")\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

#include "ttspec/tolerances.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ttspec/errors.hpp"

namespace ttspec {

std::string to_string(PrecisionMode m) {
    switch (m) {
    case PrecisionMode::Standard: return "standard";
    case PrecisionMode::Extended: return "extended";
    default: return "exact";
    }
}

std::optional<PrecisionMode> precision_mode_from_string(const std::string& s) {
    if (s == "standard") return PrecisionMode::Standard;
    if (s == "extended") return PrecisionMode::Extended;
    if (s == "exact" || s == "exact_rational") return PrecisionMode::ExactRational;
    return std::nullopt;
}

namespace {

// exponent budget: significand bits minus a 6-bit margin
int budget_bits(PrecisionMode mode) {
    switch (mode) {
    case PrecisionMode::Standard:
        return 52 - 6;
    case PrecisionMode::Extended:
        return std::numeric_limits<boost::multiprecision::cpp_bin_float_50>::digits - 6;
    default:
        return -1; // unguarded
    }
}

} // namespace

int guard_max_n(double lambda, PrecisionMode mode) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw NonFinite("guard_max_n: lambda must be in (0,1)");
    int bits = budget_bits(mode);
    if (bits < 0) return std::numeric_limits<int>::max();
    const double budget_log2 = static_cast<double>(bits);
    int n = static_cast<int>(std::floor(budget_log2 / std::log2(1.0 / lambda)));
    // adjust for rounding of the log estimate
    while (n >= 1 && -static_cast<double>(n) * std::log2(lambda) > budget_log2) --n;
    while (-(static_cast<double>(n) + 1.0) * std::log2(lambda) <= budget_log2) ++n;
    return n;
}

void check_guard(double lambda, int n, PrecisionMode mode) {
    if (n < 1) throw Error("n must be a positive integer");
    int g = guard_max_n(lambda, mode);
    if (n > g) {
        std::ostringstream os;
        os << "lambda^-n = " << lambda << "^-" << n
           << " exceeds the " << to_string(mode) << " precision budget (guard n = "
           << g << "); rerun with --precision "
           << (mode == PrecisionMode::Standard ? "extended" : "exact");
        throw ConditioningExceeded(os.str());
    }
}

} // namespace ttspec

#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace ttspec {

enum class PrecisionMode { Standard, Extended, ExactRational };

std::string to_string(PrecisionMode m);
std::optional<PrecisionMode> precision_mode_from_string(const std::string& s);

/// Global numeric tolerances. Defaults hold for every operation unless a
/// caller overrides them.
struct Tolerances {
    double tol_spec = 1e-8;  // spectral symmetry / symplecticity validation
    double tol_hyp = 1e-7;   // unit-circle membership band on |modulus - 1|
    double tol_rank = 1e-9;  // numerical transversality threshold
    double tol_eig = 1e-12;  // dense-oracle backward error budget
};

struct RunConfig {
    PrecisionMode precision = PrecisionMode::Standard;
    Tolerances tol;
    std::uint64_t seed = 1;
};

/// Largest n such that lambda^-n stays within the precision budget of the
/// mode: 2^46 (= 2^52/64) for standard doubles, 2^(digits-6) for the
/// extended software floats. Exact-rational mode has no guard.
/// Returns max int when unguarded.
int guard_max_n(double lambda, PrecisionMode mode = PrecisionMode::Standard);

/// Throws ConditioningExceeded (naming the next mode up) if n > guard.
void check_guard(double lambda, int n, PrecisionMode mode);

} // namespace ttspec

#pragma once

#include "tatep/hodge.hpp"
#include "tatep/integrator.hpp"
#include "tatep/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tatep {

/// One verified property: pass when residual <= tolerance (exact checks use tolerance 0).
struct SuiteCheck {
    std::string name;
    bool pass = true;
    double residual = 0;
    double tolerance = 0;
    int instances = 0;
    std::string detail;
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    int instances = 100;  // randomized instances per exact property
    QuadratureConfig cfg;
};

// ---------------------------------------------------------------- combinatorial (exact)

SuiteCheck check_boundary_squared(const SuiteOptions& opt);
SuiteCheck check_subdivision_commutes(const SuiteOptions& opt);
SuiteCheck check_boundary_formula(const SuiteOptions& opt);
SuiteCheck check_cubical_squared(const SuiteOptions& opt);
SuiteCheck check_cap_cup(const SuiteOptions& opt);
SuiteCheck check_thom_independence(const SuiteOptions& opt);
SuiteCheck check_carrier_homotopy(const SuiteOptions& opt);

// ---------------------------------------------------------------- analytic

/// Generalized Cauchy formula on D̄ × [a, b] for the three reference pairs, with the
/// boundary term compared against an independent 1-D quadrature of dt/t.
std::vector<SuiteCheck> check_cauchy_disk_box(const SuiteOptions& opt);
/// ∫_C dρ_ε ∧ ω_1 = 1 for ε ∈ {0.1, 0.01}.
SuiteCheck check_thom_normalization(const SuiteOptions& opt);
/// Numerical Thom values against exact intersection numbers on random transverse 2-simplexes.
SuiteCheck check_thom_vs_exact(const SuiteOptions& opt, int triangles = 50);
/// I_3(η_2(1)) is an exact zero.
SuiteCheck check_type_vanishing(const SuiteOptions& opt);
/// ∫_{γ=ε} |ω_2| decreases over ε ∈ {0.1, 0.03, 0.01, 0.003} on the disk box.
SuiteCheck check_truncation_monotone(const SuiteOptions& opt);

// ---------------------------------------------------------------- bar complex

/// d² = 0, d_I d_E + d_E d_I = 0 and coassociativity on random words (words per presentation × presentations).
std::vector<SuiteCheck> check_bar_identities(const SuiteOptions& opt, int presentations = 20, int words = 25);
/// d of the dilogarithm cocycles vanishes.
SuiteCheck check_dilog_cocycles(const SuiteOptions& opt);

// ---------------------------------------------------------------- hodge

/// verify_cauchy on the Γ chains for each a.
std::vector<SuiteCheck> check_dilog_cauchy(const SuiteOptions& opt, const std::vector<Rational>& values);
/// A period matrix entry rescaled by (2πi)^k and compared with a series oracle.
struct OracleDelta {
    std::string name;
    int row = 0, column = 0;  // 0-based
    std::complex<double> value;
    double oracle = 0;
    double delta = 0;
    double tolerance = 0;
};

struct DilogPeriodReport {
    Rational a;
    PeriodMatrix matrix;
    std::vector<OracleDelta> oracles;
    std::vector<SuiteCheck> checks;
};

/// Scenario relations, kernel dimensions, period matrix shape and oracle comparisons at a.
DilogPeriodReport dilog_periods(const SuiteOptions& opt, const Rational& a);
std::vector<SuiteCheck> check_dilog_periods(const SuiteOptions& opt, const Rational& a);

// ---------------------------------------------------------------- suites

std::vector<std::string> suite_names();
/// "combinatorial", "analytic", "bar" or "hodge"; throws DomainError otherwise.
std::vector<SuiteCheck> run_suite(const std::string& name, const SuiteOptions& opt);

}  // namespace tatep

#pragma once

#include "tatep/bar_dga.hpp"
#include "tatep/integrator.hpp"
#include "tatep/linalg.hpp"

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace tatep {

/// Scalar q·(2πi)^power when exact, otherwise a numerical value with an error bound.
struct PeriodValue {
    std::complex<double> value;
    double error = 0;
    bool exact = true;
    Rational q = 0;
    int power = 0;

    static PeriodValue exact_value(const Rational& q, int power = 0);
    static PeriodValue numeric(std::complex<double> v, double error);

    bool is_exact_zero() const { return exact && sgn(q) == 0; }
    PeriodValue times_two_pi_i(int k) const;
    PeriodValue operator*(const Rational& c) const;
    PeriodValue operator*(const PeriodValue& o) const;
    PeriodValue operator/(const Rational& c) const;
    PeriodValue& operator+=(const PeriodValue& o);
    /// "(2πi)^-1", "-1/2·(2πi)^-2", or the numeric value.
    std::string symbolic() const;
};

/// Elements of the de Rham bar complex B(N) ⊗ C(*): keys with an empty right factor.
using DeRhamChain = std::map<BarKey, PeriodValue>;

/// I on a right factor: exact 1 on the unit, I(chain) on chain generators.
using ChainEvaluator = std::function<PeriodValue(const Monomial&)>;

/// c([a_1|...|a_s] m (t)) = [a_1|...|a_s] ⊗ I(m)·(2πi)^t.
DeRhamChain comparison_map(const BarChain& x, const ChainEvaluator& I);

// ---------------------------------------------------------------- filtrations

enum class Side { Betti, DeRham };

std::string side_name(Side s);

/// Weight W_n = components with −2·twist ≤ n; Hodge F^p = components with −twist ≥ p.
struct FilteredBarComplex {
    Side side = Side::Betti;
    const BarComplex* bar = nullptr;

    BarChain weight_truncate(const BarChain& x, int n) const;
    BarChain hodge_truncate(const BarChain& x, int p) const;
    /// Gr^W_{2r}: the components of twist −r.
    BarChain weight_graded(const BarChain& x, int r) const;
};

// ---------------------------------------------------------------- realization

/// Candidate e_i ⊗ Z·(2πi)^shift placing the named cocycle Z in grade −grade(e_i).
struct KernelCoordinate {
    int basis = 0;
    std::string cocycle;
    int shift = 0;
};

/// Sparse element of V ⊗ (bar complex): (basis index, key) → coefficient.
using TensorElement = std::map<std::pair<int, BarKey>, Rational>;

struct KernelBasis {
    Side side = Side::Betti;
    std::vector<KernelCoordinate> coords;
    std::vector<linalg::Vector> vectors;  // reduced echelon rows over coords
    std::vector<std::string> names;       // "v2", "w1", ...
    std::vector<std::string> basis_names;  // names of the comodule basis

    int dim() const { return static_cast<int>(vectors.size()); }
    TensorElement element(int k, const BarComplex& B, const std::map<std::string, BarChain>& cocycles,
                          const GradedComodule& V) const;
    std::string to_string(int k) const;
};

/// Degree-zero kernel of Δ_V ⊗ id − id ⊗ Δ on ⊕_i V_i ⊗ span{named cocycles shifted to grade −i}.
/// De Rham cocycles are given as elements of B(N); Betti cocycles as elements of B(N, AC ⊗ Q(*)).
KernelBasis realization_kernel(const GradedComodule& V, const BarComplex& B,
                               const std::map<std::string, BarChain>& cocycles, Side side);

/// dim Gr^W_{2r} of the kernel for r = 0..max.
std::vector<int> weight_graded_dims(const KernelBasis& K, const BarComplex& B,
                                    const std::map<std::string, BarChain>& cocycles, const GradedComodule& V);

struct PeriodMatrix {
    std::vector<std::string> betti_basis;   // columns
    std::vector<std::string> derham_basis;  // rows
    std::vector<int> betti_twists, derham_twists;
    std::vector<std::vector<PeriodValue>> entries;  // [row][column]
    double residual = 0;  // max |c(v_j) − Σ_k P_kj w_k|

    /// Entries above the diagonal in weight order are exact zeros.
    bool lower_triangular() const;
    std::string table() const;
};

/// c(Betti kernel basis) expressed in the de Rham kernel basis.
PeriodMatrix period_matrix(const GradedComodule& V, const BarComplex& betti,
                           const std::map<std::string, BarChain>& betti_cocycles,
                           const std::map<std::string, BarChain>& derham_cocycles, const ChainEvaluator& I);

struct MixedTateCheck {
    std::string name;
    bool pass = true;
    std::string detail;
};

/// Betti and de Rham bases with weights, Hodge levels and the comparison matrix.
struct MixedTateData {
    std::vector<int> betti_weights, derham_weights, hodge_levels;
    std::vector<std::vector<std::complex<double>>> comparison;  // [derham][betti]

    /// Gr^W odd = 0, c respects W, and F, F̄ are 2r-opposite on each Gr^W_{2r}.
    std::vector<MixedTateCheck> validate(double tol = 1e-9) const;
};

MixedTateData mixed_tate_data(const PeriodMatrix& P);

// ---------------------------------------------------------------- dilogarithm scenario

struct RelationCheck {
    std::string name;
    std::string kind;  // "symbolic", "declared", "boundary" or "multiplicity"
    double residual = 0;
    double tolerance = 0;
    bool pass = true;
    std::string detail;
};

/// The dilogarithm bundle for a rational 0 < a < 1: presentation with ρ_1(a), ρ_1(1−a), ρ_2(a)
/// and the chain generators ξ_1(a), ξ_1(1−a), ξ_2(a); geometric cells; cocycles; comodule V.
/// Sign convention: d ρ_2(a) = ρ_1(1−a)·ρ_1(a), matching the cubical face-map signs.
struct DilogScenario {
    Rational a;
    DGAPresentation N;
    std::map<std::string, CellChain> cycle_cells;                // ρ generators
    std::map<std::string, std::vector<CellChain>> chain_cells;  // ξ generators, one chain per cube
    std::map<std::string, BarChain> betti_cocycles;              // Z0, Z1(a), Z1(1-a), Z2
    std::map<std::string, BarChain> derham_cocycles;             // 1, Li1(a), Li1(1-a), Li2(a)
    GradedComodule V;
    std::vector<RelationCheck> relations;
    QuadratureConfig cfg;

    DilogScenario() = default;
    DilogScenario(const DilogScenario&) = delete;
    DilogScenario& operator=(const DilogScenario&) = delete;

    BarComplex bar_N() const { return BarComplex(N, BarCoefficients::Augmentation); }
    BarComplex bar_betti() const { return BarComplex(N, BarCoefficients::Algebra); }
    /// I on right factors via the integrator; cycle generators vanish for the reason of type.
    ChainEvaluator evaluator() const;
    bool valid() const;
};

/// Builds and validates the scenario; throws ScenarioError naming the first failing relation
/// unless `validate` is false. Without `numeric_relations` the Thom-form multiplicity checks are skipped.
std::unique_ptr<DilogScenario> build_dilog_scenario(const Rational& a, const QuadratureConfig& cfg = {},
                                                    bool validate = true, bool numeric_relations = true);

/// Chains γ with ∂γ = 0 whose topological boundaries contain η_1(0) and η_2(0):
/// Γ_1 = {1 − t_0 − i u t_0} and Γ_2 = {(t_1 + i u t_1², 1 − t_0)}, 0 ≤ t_0 ≤ t_1 ≤ a, 0 ≤ u ≤ 1.
std::vector<std::pair<std::string, CellChain>> dilog_cauchy_chains(const Rational& a);

/// Li_2(x) = Σ x^k/k² and −log(1−x) = Σ x^k/k for |x| < 1.
double dilog_series(double x);
double li1_series(double x);

}  // namespace tatep

#pragma once

#include "tatep/face_maps.hpp"
#include "tatep/geometry.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace tatep {

struct QuadratureConfig {
    double rel_tol = 0;  // 0 selects the dimension default
    double abs_tol = 1e-12;
    long max_evaluations = 40'000'000;
    /// Radii for the truncation fallback, strictly decreasing toward 0.
    std::vector<double> truncation_radii{1e-3, 1e-4, 1e-5, 1e-6};
    unsigned long long seed = 1;
    int threads = 1;

    /// rel 1e-8 for 1-D, 1e-6 for 2-D and 1e-4 for higher dimensions unless set.
    double rel_for(int dim) const;
    void validate() const;
};

struct IntegralResult {
    std::complex<double> value;
    double error = 0;
    bool converged = true;
    long evaluations = 0;
    bool exact_zero = false;

    IntegralResult& operator+=(const IntegralResult& o);
    IntegralResult scaled(std::complex<double> c) const;
};

/// Adaptive tensor Gauss-Kronrod cubature of f over [0,1]^d.
IntegralResult integrate_cube(const std::function<std::complex<double>(const double*)>& f, int d, double rel_tol,
                              double abs_tol, long max_evaluations,
                              const std::vector<std::pair<std::vector<double>, std::vector<double>>>& boxes = {});

/// ∫_cell ω_n with ω_n = (2πi)^{-n} dz_1/z_1 ∧ ... ∧ dz_n/z_n.
/// Cells whose pullback vanishes for the reason of type return an exact zero.
IntegralResult integrate_omega(const ParamCell& cell, const QuadratureConfig& cfg = {});

/// ∫_cell |ω_n|.
IntegralResult integrate_abs_omega(const ParamCell& cell, const QuadratureConfig& cfg = {});

/// I_n(γ) = (−1)^{n(n−1)/2} Σ a_σ ∫_σ ω_n; terms in D^n contribute zero, I_0 is the coefficient sum.
IntegralResult I_n(const CellChain& gamma, const QuadratureConfig& cfg = {});
IntegralResult I_n(const Chain& gamma, const SimplicialComplex& K, const CubicalFace& within = {},
                   const QuadratureConfig& cfg = {});

/// Simplicial chain supported on L_within as parametrized cells over the free coordinates.
CellChain face_cell_chain(const Chain& gamma, const SimplicialComplex& K, const CubicalFace& within);

struct CauchyReport {
    IntegralResult boundary_term;  // I_{n-1}(∂γ)
    IntegralResult stokes_term;    // (−1)^n I_n(δγ)
    std::complex<double> residual;
    double tolerance = 0;
    bool conclusive = true;
    bool pass = false;
};

/// I_{n−1}(∂γ) + (−1)^n I_n(δγ) for γ of degree n+1 in (P^1)^n.
CauchyReport verify_cauchy(const CellChain& gamma, const QuadratureConfig& cfg = {}, double tolerance = 1e-6);
CauchyReport verify_cauchy(const Chain& gamma, const SimplicialComplex& K, const QuadratureConfig& cfg = {},
                           double tolerance = 1e-6);

/// Polynomial cutoff: 0 on r <= ε/2, 1 on r >= ε, C^3 in between.
double thom_cutoff(double r, double epsilon);
double thom_cutoff_derivative(double r, double epsilon);

/// ∫_cell dρ_ε(|w|) ∧ ω_1(w), w = z_slot or 1/z_slot. Throws PreconditionError when the
/// boundary of the cell meets {|w| <= ε}.
IntegralResult thom_form_value(const ParamCell& cell2, int slot, Alpha alpha, double epsilon,
                               const QuadratureConfig& cfg = {});

/// Thom cocycle whose values are Thom-form integrals over the 2-simplexes of K.
ThomCocycle numerical_thom_cocycle(const SimplicialComplex& K, const CubicalFace& face, double epsilon,
                                   const QuadratureConfig& cfg = {});

struct MultiplicityCheck {
    int slot = 0;
    Alpha alpha = Alpha::Zero;
    std::complex<double> cell_side;  // ∫_σ dρ_ε∧ω_1∧ψ
    std::complex<double> face_side;  // Σ m ∫_F ψ
    double residual = 0;
    bool pass = false;
};

/// Numerical check of the declared face multiplicities of a cell with a Gaussian test form ψ.
std::vector<MultiplicityCheck> validate_declared_faces(const ParamCell& cell, double epsilon,
                                                       const QuadratureConfig& cfg = {}, double tolerance = 1e-2);

/// Truncation away from the faces {z_i = 0}. In single mode the removed region is
/// {|z_i| < ε for some i in slots}; in pair mode it is {|z_i| < ε for every i in slots}.
struct Truncation {
    CellChain geq;  // γ_{≥ε}
    CellChain eq;   // γ_{=ε} = δ(γ_{≥ε}) − (δγ)_{≥ε}
};

enum class TruncationMode { Single, Pair };

Truncation truncate_chain(const CellChain& gamma, double epsilon, const std::vector<int>& slots,
                          TruncationMode mode = TruncationMode::Single);

/// Merges geometrically identical cells (equal descriptions) and drops zero coefficients.
CellChain canonicalize(const CellChain& c);

/// Σ |a_σ| ∫_σ |ω_n| after canonicalization.
IntegralResult abs_omega_mass(const CellChain& gamma, const QuadratureConfig& cfg = {});

/// The cell D̄ × [a, b] in (P^1)^2 with its declared face {0} × [a, b].
CellChain disk_box_chain(const Rational& a, const Rational& b);

}  // namespace tatep

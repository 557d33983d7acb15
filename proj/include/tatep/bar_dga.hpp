#pragma once

#include "tatep/errors.hpp"
#include "tatep/geometry.hpp"
#include "tatep/rational.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

namespace tatep {

enum class GeneratorKind { Cycle, Chain };

struct Generator {
    std::string name;
    int r = 1;    // Tate grade
    int deg = 0;  // cohomological degree
    GeneratorKind kind = GeneratorKind::Cycle;
};

/// Sorted generator indices; odd-degree generators appear at most once.
using Monomial = std::vector<int>;
/// Rational combination of monomials in the free graded-commutative algebra.
using Poly = std::map<Monomial, Rational>;

/// Finite presentation of a commutative DGA: free graded-commutative on the generators,
/// with a differential table. Cycle generators span N; chain generators extend it to AC.
class DGAPresentation {
public:
    int add_generator(const std::string& name, int r, int deg, GeneratorKind kind = GeneratorKind::Cycle);
    void set_differential(const std::string& name, const Poly& value);

    int size() const { return static_cast<int>(gens_.size()); }
    int index(const std::string& name) const;
    const Generator& generator(int i) const { return gens_.at(i); }
    const std::vector<Generator>& generators() const { return gens_; }
    const Poly& differential(int i) const { return diff_.at(i); }

    Poly one() const { return Poly{{Monomial{}, Rational(1)}}; }
    Poly gen(const std::string& name) const;

    Poly mul(const Poly& a, const Poly& b) const;
    Poly d(const Poly& a) const;
    /// Koszul sign and product of two monomials; sign 0 when the product vanishes.
    std::pair<Monomial, int> mul(const Monomial& a, const Monomial& b) const;

    int r(const Monomial& m) const;
    int deg(const Monomial& m) const;
    /// Monomial built from cycle generators only.
    bool in_N(const Monomial& m) const;

    /// The augmentation N -> N_0 = Q: the coefficient of the empty monomial.
    Rational augmentation(const Poly& p) const;

    std::string to_string(const Poly& p) const;
    std::string to_string(const Monomial& m) const;

    /// Bigrading of the differential and d² = 0 on every generator; throws ValidationError.
    void validate() const;

private:
    std::vector<Generator> gens_;
    std::vector<Poly> diff_;
    std::map<std::string, int> by_name_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(const Rational& c, Poly a);

/// Random presentation with d² = 0 by construction: each differential is d of a random
/// polynomial in earlier generators plus a random product of closed generators.
DGAPresentation random_presentation(std::mt19937_64& rng, int generators);

// ---------------------------------------------------------------- bar complex

/// B(N) ⊗ Q(*) uses the augmentation on the right; B(N, AC ⊗ Q(*)) uses the algebra itself.
/// Both carry a Tate twist on the right factor.
enum class BarCoefficients { Augmentation, Algebra };

/// [a_1|...|a_s] m (twist): letters are monomials in N_+.
struct BarKey {
    std::vector<Monomial> letters;
    Monomial right;
    int twist = 0;

    auto operator<=>(const BarKey&) const = default;
};

using BarChain = std::map<BarKey, Rational>;
using BarTensor = std::map<std::pair<BarKey, BarKey>, Rational>;

BarChain operator+(BarChain a, const BarChain& b);
BarChain operator-(BarChain a, const BarChain& b);
BarChain operator*(const Rational& c, BarChain a);

class BarComplex {
public:
    BarComplex(const DGAPresentation& N, BarCoefficients coeffs);

    const DGAPresentation& algebra() const { return N_; }
    BarCoefficients coefficients() const { return coeffs_; }

    /// Multilinear expansion of [l_1|...|l_s] m (twist); letters must lie in N_+.
    BarChain word(const std::vector<Poly>& letters, const Poly& right, int twist = 0) const;
    BarChain word(const std::vector<Poly>& letters) const { return word(letters, N_.one(), 0); }

    /// Σ deg a_i + deg m − s.
    int degree(const BarKey& k) const;
    /// Σ r(a_i) + twist.
    int grade(const BarKey& k) const;
    int weight(const BarKey& k) const { return -2 * k.twist; }

    BarChain d_I(const BarChain& x) const;
    BarChain d_E(const BarChain& x) const;
    BarChain d(const BarChain& x) const { return d_I(x) + d_E(x); }

    /// Multiplies by (2πi)^k.
    BarChain shift_twist(const BarChain& x, int k) const;

    /// Δ([a_1|...|a_s] m) = Σ_i [a_1|...|a_i] ⊗ [a_{i+1}|...|a_s] m; the left factor lies in B(N).
    BarTensor coproduct(const BarChain& x) const;
    /// Projection to the empty word.
    Rational counit(const BarChain& x) const;
    /// (d ⊗ 1 + J ⊗ d) on B(N) ⊗ B(N, M), J = (−1)^{degree} on the left factor.
    BarTensor d_tensor(const BarTensor& t, const BarComplex& left) const;

    /// Shuffle product on B(N) with Koszul signs in the bar degree.
    BarChain shuffle(const BarChain& x, const BarChain& y) const;

    std::string to_string(const BarKey& k) const;
    std::string to_string(const BarChain& x) const;

private:
    void check_letter(const Monomial& m) const;
    int letter_sign(const Monomial& m) const { return N_.deg(m) % 2 ? -1 : 1; }

    const DGAPresentation& N_;
    BarCoefficients coeffs_;
};

/// A random word of length up to max_len with small coefficients.
BarChain random_bar_word(const BarComplex& B, std::mt19937_64& rng, int max_len);

// ---------------------------------------------------------------- alternating projector

/// Alt = (1/|G_n|) Σ sign(g) g over inversions and permutations of the coordinates;
/// identical transformed cells are merged.
CellChain alt_project(const CellChain& c);

// ---------------------------------------------------------------- comodules

/// Graded right comodule over named cocycles of H: Δ_V(e) = Σ c · e' ⊗ h.
struct GradedComodule {
    struct Term {
        int basis;
        std::string cocycle;  // name of an element of H, "1" for the unit
        Rational coeff;
    };
    std::vector<std::string> basis;
    std::vector<int> grade;
    std::vector<std::vector<Term>> coaction;
    /// Named cocycles of H as bar elements of B(N).
    std::map<std::string, BarChain> cocycles;

    /// Grading, counitarity and coassociativity on the nose; throws ValidationError.
    void validate(const BarComplex& BN) const;
};

}  // namespace tatep

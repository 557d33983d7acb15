#include "doctest.h"

#include "tatep/bar_dga.hpp"
#include "tatep/integrator.hpp"

using namespace tatep;

namespace {

using Key3 = std::tuple<BarKey, BarKey, BarKey>;

std::map<Key3, Rational> coassoc_left(const BarComplex& BN, const BarComplex& B, const BarChain& x)
{
    std::map<Key3, Rational> out;
    for (const auto& [kk, c] : B.coproduct(x))
        for (const auto& [k2, c2] : BN.coproduct(BarChain{{kk.first, Rational(1)}}))
            out[{k2.first, k2.second, kk.second}] += c * c2;
    std::erase_if(out, [](const auto& e) { return sgn(e.second) == 0; });
    return out;
}

std::map<Key3, Rational> coassoc_right(const BarComplex& B, const BarChain& x)
{
    std::map<Key3, Rational> out;
    for (const auto& [kk, c] : B.coproduct(x))
        for (const auto& [k2, c2] : B.coproduct(BarChain{{kk.second, Rational(1)}}))
            out[{kk.first, k2.first, k2.second}] += c * c2;
    std::erase_if(out, [](const auto& e) { return sgn(e.second) == 0; });
    return out;
}

}  // namespace

TEST_CASE("random presentations satisfy d² = 0 and the bigrading")
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        auto N = random_presentation(rng, 6);
        CHECK_NOTHROW(N.validate());
    }
}

TEST_CASE("graded commutativity and the Leibniz rule in a presentation")
{
    DGAPresentation N;
    N.add_generator("x", 1, 1);
    N.add_generator("y", 1, 1);
    N.add_generator("u", 2, 1);
    N.add_generator("w", 1, 0);
    N.set_differential("u", N.mul(N.gen("x"), N.gen("y")));
    N.set_differential("w", N.gen("x"));
    N.validate();
    auto xy = N.mul(N.gen("x"), N.gen("y"));
    auto yx = N.mul(N.gen("y"), N.gen("x"));
    CHECK(xy == Rational(-1) * yx);
    CHECK(N.mul(N.gen("x"), N.gen("x")).empty());
    auto wu = N.mul(N.gen("w"), N.gen("u"));
    CHECK(N.d(wu) == N.mul(N.gen("x"), N.gen("u")) + N.mul(N.gen("w"), N.d(N.gen("u"))));
    auto uw = N.mul(N.gen("u"), N.gen("w"));
    CHECK(N.d(uw) == N.mul(N.d(N.gen("u")), N.gen("w")) - N.mul(N.gen("u"), N.gen("x")));
}

TEST_CASE("bar differentials square to zero and anticommute")
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 25; ++t) {
        auto N = random_presentation(rng, 5);
        for (auto coeffs : {BarCoefficients::Augmentation, BarCoefficients::Algebra}) {
            BarComplex B(N, coeffs);
            BarChain x;
            try {
                x = random_bar_word(B, rng, 4);
            } catch (const ContractError&) {
                continue;
            }
            CHECK(B.d_I(B.d_I(x)).empty());
            CHECK(B.d_E(B.d_E(x)).empty());
            CHECK((B.d_I(B.d_E(x)) + B.d_E(B.d_I(x))).empty());
            CHECK(B.d(B.d(x)).empty());
            for (const auto& [k, c] : x)
                for (const auto& [dk, dc] : B.d(BarChain{{k, Rational(1)}})) {
                    CHECK(B.degree(dk) == B.degree(k) + 1);
                    CHECK(B.grade(dk) == B.grade(k));
                }
        }
    }
}

TEST_CASE("deconcatenation is coassociative, counital and a chain map")
{
    std::mt19937_64 rng(13);
    for (int t = 0; t < 15; ++t) {
        auto N = random_presentation(rng, 5);
        BarComplex BN(N, BarCoefficients::Augmentation);
        for (auto coeffs : {BarCoefficients::Augmentation, BarCoefficients::Algebra}) {
            BarComplex B(N, coeffs);
            BarChain x;
            try {
                x = random_bar_word(B, rng, 4);
            } catch (const ContractError&) {
                continue;
            }
            CHECK(coassoc_left(BN, B, x) == coassoc_right(B, x));
            BarChain counit_side;
            for (const auto& [kk, c] : B.coproduct(x))
                if (kk.first.letters.empty()) counit_side = counit_side + BarChain{{kk.second, c}};
            CHECK(counit_side == x);
            CHECK(B.coproduct(B.d(x)) == B.d_tensor(B.coproduct(x), BN));
        }
    }
}

TEST_CASE("shuffle product is associative, graded commutative and a derivation")
{
    std::mt19937_64 rng(17);
    int tested = 0;
    for (int t = 0; t < 30 && tested < 15; ++t) {
        auto N = random_presentation(rng, 5);
        BarComplex B(N, BarCoefficients::Augmentation);
        BarChain x, y, z;
        try {
            x = random_bar_word(B, rng, 2);
            y = random_bar_word(B, rng, 2);
            z = random_bar_word(B, rng, 2);
        } catch (const ContractError&) {
            continue;
        }
        ++tested;
        CHECK(B.shuffle(B.shuffle(x, y), z) == B.shuffle(x, B.shuffle(y, z)));
        for (const auto& [kx, cx] : x)
            for (const auto& [ky, cy] : y) {
                BarChain a{{kx, Rational(1)}}, b{{ky, Rational(1)}};
                int s = (B.degree(kx) * B.degree(ky)) % 2 ? -1 : 1;
                CHECK(B.shuffle(a, b) == Rational(s) * B.shuffle(b, a));
                int j = B.degree(kx) % 2 ? -1 : 1;
                CHECK(B.d(B.shuffle(a, b)) == B.shuffle(B.d(a), b) + Rational(j) * B.shuffle(a, B.d(b)));
            }
    }
    CHECK(tested >= 10);
}

TEST_CASE("letters outside N_+ are rejected")
{
    DGAPresentation N;
    N.add_generator("x", 1, 1);
    N.add_generator("xi", 1, 0, GeneratorKind::Chain);
    BarComplex B(N, BarCoefficients::Algebra);
    CHECK_THROWS_AS(B.word({N.gen("xi")}, N.one()), ContractError);
    CHECK_THROWS_AS(B.word({N.one()}, N.one()), ContractError);
    CHECK_NOTHROW(B.word({N.gen("x")}, N.gen("xi"), -1));
}

TEST_CASE("alternating projector is idempotent and commutes with the boundary")
{
    ParamCell c;
    c.n = 2;
    c.params.push_back(Param::real("t", Affine::constant(Rational(1, 3)), Affine::constant(Rational(1, 2))));
    c.map = {Expr::param("t"), Expr::parse("(- 1 t)")};
    CellChain chain{2, 1, {}};
    chain.add(std::make_shared<const ParamCell>(c), 1);
    auto a = alt_project(chain);
    CHECK(a.terms.size() == 8);
    auto aa = alt_project(a);
    REQUIRE(aa.terms.size() == a.terms.size());
    CHECK(canonicalize(aa.scaled(-1) += a).empty());

    auto lhs = canonicalize(chain_boundary(a));
    auto rhs = alt_project(chain_boundary(chain));
    CHECK(canonicalize(lhs.scaled(-1) += rhs).empty());
}

#include <doctest.h>

#include <cmath>

#include "aqsforge/pauli.hpp"
#include "test_support.hpp"

using namespace aqsforge;

namespace {

/// Bloch components of W^dag sigma_a W read off through traces. This is the
/// independent path for checking the alpha/beta/gamma formulas: u_b =
/// tr(sigma_b W^dag sigma_a W) / 2.
std::array<double, 3> conjugated_axis(const Mat2& w, int a) {
    const Mat2 m = w.adjoint() * sigma(a) * w;
    std::array<double, 3> u{};
    for (int b = 1; b <= 3; ++b) {
        const Complex t = (sigma(b) * m).trace();
        REQUIRE(std::abs(t.imag()) <= 1e-12);
        u[b - 1] = t.real() / 2.0;
    }
    REQUIRE(std::abs(m.trace()) <= 1e-12);  // conjugated Pauli stays traceless
    return u;
}

}  // namespace

TEST_CASE("permutations are enumerated in lexicographic order") {
    const auto& ps = all_perms();
    REQUIRE(ps.size() == 6);
    CHECK(ps[0] == Perm{1, 2, 3});
    CHECK(ps[1] == Perm{1, 3, 2});
    CHECK(ps[2] == Perm{2, 1, 3});
    CHECK(ps[3] == Perm{2, 3, 1});
    CHECK(ps[4] == Perm{3, 1, 2});
    CHECK(ps[5] == Perm{3, 2, 1});
}

TEST_CASE("coefficient matrix layout against hand expansion") {
    // w0 s0 + i w1 s1 - i w2 s2 + i w3 s3, written out entry by entry.
    const PauliCoeffs w{0.1, 0.2, 0.3, std::sqrt(1.0 - 0.01 - 0.04 - 0.09)};
    const Mat2 m = coeffs_to_matrix(w);
    CHECK(m.a00 == Complex(w.w0, w.w3));
    CHECK(m.a01 == Complex(-w.w2, w.w1));
    CHECK(m.a10 == Complex(w.w2, w.w1));
    CHECK(m.a11 == Complex(w.w0, -w.w3));
    CHECK(m.is_unitary(1e-12));
    CHECK_THROWS_AS(coeffs_to_matrix(PauliCoeffs{1.0, 1.0, 0.0, 0.0}), ContractError);
}

TEST_CASE("round trip through the matrix and back") {
    Rng rng(21);
    for (int i = 0; i < 10000; ++i) {
        const PauliCoeffs w = haar_sample_one(rng);
        const Mat2 m = coeffs_to_matrix(w);
        CHECK(m.is_unitary(1e-12));
        const PauliCoeffs back = matrix_to_coeffs(m);
        CHECK(std::abs(back.w0 - w.w0) <= 1e-9);
        CHECK(std::abs(back.w1 - w.w1) <= 1e-9);
        CHECK(std::abs(back.w2 - w.w2) <= 1e-9);
        CHECK(std::abs(back.w3 - w.w3) <= 1e-9);
    }
    // A global phase is forgiven: the parametrization covers U(2) rays.
    const PauliCoeffs w = haar_sample_one(rng);
    const Mat2 rotated = std::polar(1.0, 0.77) * coeffs_to_matrix(w);
    const Mat2 rebuilt = coeffs_to_matrix(matrix_to_coeffs(rotated));
    CHECK(phase_equal_ops(rebuilt, rotated).equivalent);

    const Mat2 shear{Complex(1), Complex(1), Complex(0), Complex(1)};
    CHECK_THROWS_AS(matrix_to_coeffs(shear), ContractError);
}

TEST_CASE("normalization applies the sign convention") {
    const PauliCoeffs flipped = PauliCoeffs::normalized(-0.5, 0.5, 0.5, 0.5);
    CHECK(flipped.w0 == 0.5);
    CHECK(flipped.w1 == -0.5);
    const PauliCoeffs zero_head = PauliCoeffs::normalized(0.0, -2.0, 1.0, 0.0);
    CHECK(zero_head.w0 == 0.0);
    CHECK(zero_head.w1 > 0.0);
    CHECK(zero_head.is_unit(1e-12));
    CHECK_THROWS_AS(PauliCoeffs::normalized(0.0, 0.0, 0.0, 0.0), ContractError);
}

TEST_CASE("alpha beta gamma match the conjugated axis") {
    // The formulas exist to describe W^dag sigma_a W = u . sigma; each
    // starting Pauli pairs with one permutation and a fixed sign pattern.
    Rng rng(22);
    for (int i = 0; i < 200; ++i) {
        const PauliCoeffs w = haar_sample_one(rng);
        const Mat2 m = coeffs_to_matrix(w);

        const AbgTriple t1 = abg(w, Perm{1, 2, 3});
        const auto u1 = conjugated_axis(m, 1);
        CHECK(std::abs(u1[0] - 2.0 * t1.alpha) <= 1e-12);
        CHECK(std::abs(u1[1] - 2.0 * t1.gamma) <= 1e-12);
        CHECK(std::abs(u1[2] - 2.0 * t1.beta) <= 1e-12);

        const AbgTriple t2 = abg(w, Perm{2, 3, 1});
        const auto u2 = conjugated_axis(m, 2);
        CHECK(std::abs(u2[0] + 2.0 * t2.beta) <= 1e-12);
        CHECK(std::abs(u2[1] - 2.0 * t2.alpha) <= 1e-12);
        CHECK(std::abs(u2[2] - 2.0 * t2.gamma) <= 1e-12);

        const AbgTriple t3 = abg(w, Perm{3, 1, 2});
        const auto u3 = conjugated_axis(m, 3);
        CHECK(std::abs(u3[0] + 2.0 * t3.gamma) <= 1e-12);
        CHECK(std::abs(u3[1] + 2.0 * t3.beta) <= 1e-12);
        CHECK(std::abs(u3[2] - 2.0 * t3.alpha) <= 1e-12);
    }
}

TEST_CASE("quadratic identity on the coefficient sphere") {
    Rng rng(23);
    for (int i = 0; i < 1000; ++i) {
        const PauliCoeffs w = haar_sample_one(rng);
        for (const Perm& p : all_perms()) {
            const AbgTriple t = abg(w, p);
            const double s = t.alpha * t.alpha + t.beta * t.beta + t.gamma * t.gamma;
            CHECK(std::abs(s - 0.25) <= 1e-12);
        }
    }
}

TEST_CASE("abg validates its inputs") {
    const PauliCoeffs w{1.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(abg(w, Perm{1, 1, 2}), ContractError);
    CHECK_THROWS_AS(abg(w, Perm{0, 1, 2}), ContractError);
    CHECK_THROWS_AS(abg(PauliCoeffs{0.5, 0.0, 0.0, 0.0}, Perm{1, 2, 3}), ContractError);
}

TEST_CASE("classification fixtures") {
    const PauliCoeffs h{0.5, 0.5, 0.5, 0.5};
    const ClassificationReport rh = classify(h);
    CHECK(rh.forgeable);
    CHECK(rh.member_of.size() == 6);
    // Exact arithmetic: every permutation gives (0, 1/2, 0).
    for (const AbgTriple& t : rh.triples) {
        CHECK(t.alpha == 0.0);
        CHECK(t.beta == 0.5);
        CHECK(t.gamma == 0.0);
    }

    const PauliCoeffs wa{0.0, 0.5, 0.5, std::sqrt(0.5)};
    const ClassificationReport ra = classify(wa);
    CHECK(ra.forgeable);
    bool has312 = false;
    for (const Perm& p : ra.member_of) {
        if (p == Perm{3, 1, 2}) has312 = true;
    }
    CHECK(has312);
    // The defining alpha sits at the representation floor of 1/sqrt(2).
    CHECK(std::abs(abg(wa, Perm{3, 1, 2}).alpha) == std::ldexp(1.0, -53));

    const double s = 1.0 / std::sqrt(3.0);
    const PauliCoeffs t{0.0, s, s, s};
    const ClassificationReport rt = classify(t);
    CHECK(!rt.forgeable);
    CHECK(rt.member_of.empty());
    for (const AbgTriple& tr : rt.triples) {
        CHECK(std::abs(std::abs(tr.product()) - 1.0 / 54.0) <= 1e-12);
    }
    CHECK(std::abs(rt.min_abs_product() - 1.0 / 54.0) <= 1e-12);
}

TEST_CASE("classification respects the tolerance knob") {
    const double s = 1.0 / std::sqrt(3.0);
    const PauliCoeffs t{0.0, s, s, s};
    // 1/54 is about 1.85e-2: a looser threshold flips the verdict.
    CHECK(!classify(t, 1e-2).forgeable);
    CHECK(classify(t, 2e-2).forgeable);
    CHECK(classify(t, 2e-2).member_of.size() == 6);
}

TEST_CASE("haar sampling is deterministic and covers the sphere evenly") {
    const auto a = haar_sample(42, 500);
    const auto b = haar_sample(42, 500);
    REQUIRE(a.size() == 500);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == b[i]);
        CHECK(a[i].is_unit(1e-12));
        // Sign convention: representative of the +/-W ray.
        CHECK(a[i].w0 >= 0.0);
    }
    const auto c = haar_sample(43, 500);
    CHECK(!(a[0] == c[0]));

    // Second moments of the uniform sphere distribution: E[w_i^2] = 1/4.
    const auto big = haar_sample(7, 20000);
    double m[4] = {};
    for (const PauliCoeffs& w : big) {
        for (int i = 0; i < 4; ++i) m[i] += w[i] * w[i];
    }
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(m[i] / big.size() - 0.25) < 0.01);
    }
}

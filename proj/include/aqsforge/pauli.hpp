#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "aqsforge/mat2.hpp"
#include "aqsforge/rng.hpp"

namespace aqsforge {

/// Real 4-vector (w0, w1, w2, w3) parametrizing a 2x2 unitary as
///
///   W = w0 s0 + i w1 s1 - i w2 s2 + i w3 s3,
///
/// with sum of squares 1 and w0 >= 0. Note the minus sign on the s2 term;
/// relative to the standard quaternion convention U = a + i(b s1 + c s2 + d s3)
/// the mapping is (a, b, c, d) = (w0, w1, -w2, w3). Every unitary is of this
/// form up to global phase.
struct PauliCoeffs {
    double w0{}, w1{}, w2{}, w3{};

    /// Normalizes and applies the sign convention (w0 >= 0; when w0
    /// vanishes, first nonzero of w1,w2,w3 positive). Throws ContractError
    /// on a near-zero vector.
    static PauliCoeffs normalized(double w0, double w1, double w2, double w3);

    double norm() const;
    bool is_unit(double tol = kAnalyticTol) const;

    /// Component access, l in {0,1,2,3}.
    double operator[](int l) const;

    bool operator==(const PauliCoeffs&) const = default;
};

/// Ordered distinct triple (l, m, n) from {1, 2, 3}.
struct Perm {
    int l{}, m{}, n{};
    bool operator==(const Perm&) const = default;
};

/// The six permutations in lexicographic order:
/// (1,2,3) (1,3,2) (2,1,3) (2,3,1) (3,1,2) (3,2,1).
const std::array<Perm, 6>& all_perms();

/// The functionals attached to a permutation (l, m, n):
///   alpha = w0^2 + w_l^2 - 1/2
///   beta  = w0 w_m + w_n w_l
///   gamma = w0 w_n - w_l w_m
/// Normalization forces alpha^2 + beta^2 + gamma^2 = 1/4.
struct AbgTriple {
    double alpha{}, beta{}, gamma{};
    Perm perm{};

    double product() const { return alpha * beta * gamma; }
};

/// Membership result over all six permutations. The scheme built on W has a
/// forgeable message exactly when some |alpha beta gamma| vanishes.
struct ClassificationReport {
    std::array<AbgTriple, 6> triples{};
    std::vector<Perm> member_of;
    bool forgeable = false;
    double tol = kAnalyticTol;

    double min_abs_product() const;
};

/// Builds the parametrized unitary. The result satisfies
/// ||W^dag W - I||_max <= 1e-12.
Mat2 coeffs_to_matrix(const PauliCoeffs& w);

/// Inverse up to global phase: strips the phase via det(W), then applies the
/// sign convention. coeffs_to_matrix(matrix_to_coeffs(W)) is phase-equal
/// to W. Throws ContractError for non-unitary input.
PauliCoeffs matrix_to_coeffs(const Mat2& w);

/// Evaluates (alpha_l, beta_m, gamma_n) for one permutation.
/// Throws ContractError unless perm is a permutation of (1,2,3).
AbgTriple abg(const PauliCoeffs& w, Perm perm);

/// Evaluates all six permutations; member_of collects those with
/// |alpha beta gamma| <= tol. The tolerance applies to the product, not the
/// factors, since membership is defined by the product vanishing.
ClassificationReport classify(const PauliCoeffs& w, double tol = kAnalyticTol);

/// One coefficient vector uniform on the unit 3-sphere (4 independent
/// standard normals, normalized, sign-fixed).
PauliCoeffs haar_sample_one(Rng& rng);

/// `count` Haar samples from a fresh engine seeded with `seed`.
std::vector<PauliCoeffs> haar_sample(std::uint64_t seed, std::size_t count);

}  // namespace aqsforge

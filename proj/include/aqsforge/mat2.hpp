#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "aqsforge/errors.hpp"

namespace aqsforge {

using Complex = std::complex<double>;

/// Default tolerance for analytically constructed quantities (eigenvectors,
/// witnesses), where the error budget is rounding accumulated over a few
/// dozen flops.
inline constexpr double kAnalyticTol = 1e-9;

/// Default tolerance for exact algebraic identities (unitarity of a freshly
/// parametrized matrix, the quadratic coefficient identity).
inline constexpr double kAlgebraicTol = 1e-12;

/// Unit-norm two-component complex vector: a qubit message or signature state.
///
/// The canonical phase convention makes states comparable byte-for-byte:
/// after canonical(), the first component with modulus above 1e-9 is real
/// and nonnegative.
struct Ket2 {
    Complex c0{};
    Complex c1{};

    double norm() const;
    bool is_unit(double tol = kAnalyticTol) const;

    /// Scales to unit norm. Throws ContractError on a near-zero vector.
    Ket2 normalized() const;

    /// Unit-norm vector with the canonical global phase.
    Ket2 canonical() const;
};

/// <a|b>
Complex inner(const Ket2& a, const Ket2& b);

/// Dense 2x2 complex matrix, the carrier for every operator in the toolkit.
struct Mat2 {
    Complex a00{}, a01{};
    Complex a10{}, a11{};

    static Mat2 identity();

    Mat2 adjoint() const;
    Complex trace() const;
    Complex det() const;

    /// Largest entry modulus.
    double max_abs() const;

    /// ||A^dag A - I||_max <= tol
    bool is_unitary(double tol = kAlgebraicTol) const;
    /// ||A A^dag - A^dag A||_max <= tol * max(1, ||A||_max^2)
    bool is_normal(double tol = kAnalyticTol) const;
};

Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator+(const Mat2& a, const Mat2& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 operator*(Complex s, const Mat2& a);
Ket2 operator*(const Mat2& a, const Ket2& v);

/// Pauli matrix sigma_k for k in {0,1,2,3} (sigma_0 = I).
const Mat2& sigma(int k);

/// Throws ContractError unless ||A^dag A - I||_max <= tol.
void require_unitary(const Mat2& a, double tol, const char* what);
/// Throws ContractError unless the state has unit norm within tol.
void require_unit(const Ket2& v, double tol, const char* what);

struct EigenPair {
    Complex value;
    Ket2 vector;
};

/// Eigen-decomposition result: two pairs, or a single pair flagged
/// degenerate when the eigenvalue gap is below 1e-9.
struct EigenSystem {
    std::vector<EigenPair> pairs;
    bool degenerate = false;
};

/// Outcome of a phase-equivalence test. `theta` is the relative phase
/// arg(<a|b>) (meaningful when equivalent); `gap` is 1 - |overlap|.
struct PhaseDecision {
    bool equivalent = false;
    double theta = 0.0;
    double gap = 0.0;
};

/// States equal up to a global phase: equivalent iff 1 - |<a|b>| <= tol.
PhaseDecision phase_equal_states(const Ket2& a, const Ket2& b, double tol = kAnalyticTol);

/// Operators equal up to a global phase. For 2x2 unitaries |tr(A^dag B)| = 2
/// exactly when A = e^{i theta} B, so the test is 1 - |tr(A^dag B)|/2 <= tol.
PhaseDecision phase_equal_ops(const Mat2& a, const Mat2& b, double tol = kAnalyticTol);

/// Closed-form eigen-decomposition of a normal 2x2 matrix via the
/// characteristic quadratic. Pairs are ordered by ascending arg(value) in
/// [0, 2pi). A degenerate matrix (gap < 1e-9) is within tolerance a scalar,
/// so its eigenspace is the whole space; the canonical representative |0>
/// is returned, flagged degenerate.
/// Throws UnsupportedInputError for a non-normal matrix.
EigenSystem eigenpairs(const Mat2& a);

/// Common eigenvector of two arbitrary 2x2 matrices, by the 2x2 Shemesh
/// criterion: one exists iff det(AB - BA) = 0. When the commutator is
/// nonzero its kernel direction is the only candidate; when it vanishes the
/// eigenvectors of A (or of B, when A is scalar) are candidates. The
/// returned vector has both parallelism residuals <= tol.
std::optional<Ket2> common_eigenvector(const Mat2& a, const Mat2& b, double tol = kAnalyticTol);

}  // namespace aqsforge

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aqsforge/mat2.hpp"
#include "aqsforge/pauli.hpp"

namespace aqsforge {

enum class RotationKind {
    two_general,   // exactly two arbitrary unitary rotations
    three_pauli,   // three rotations, each phase-equal to a distinct sigma_l
};

/// A concrete AQS instance: the assistant unitary W of the encryption
/// E_k = sigma_k W together with the rotation set {R_j}.
class SchemeSpec {
  public:
    /// Two arbitrary unitary rotations. Throws ContractError if either is
    /// not unitary.
    static SchemeSpec two_rotation(const PauliCoeffs& assistant, const Mat2& r0, const Mat2& r1);

    /// The canonical three-Pauli rotation set (sigma_1, sigma_2, sigma_3).
    static SchemeSpec three_pauli(const PauliCoeffs& assistant);

    /// Three rotations, validated to be phase-equal to three distinct
    /// non-identity Paulis. sigma_0 is rejected.
    static SchemeSpec three_pauli(const PauliCoeffs& assistant, const std::vector<Mat2>& rotations);

    RotationKind kind() const { return kind_; }
    const PauliCoeffs& assistant() const { return assistant_; }
    const Mat2& assistant_matrix() const { return assistant_matrix_; }
    const std::vector<Mat2>& rotations() const { return rotations_; }
    std::size_t rotation_count() const { return rotations_.size(); }
    /// Number of secret keys (j, k): rotations x 4.
    std::size_t key_count() const { return rotations_.size() * 4; }

  private:
    SchemeSpec(RotationKind kind, PauliCoeffs assistant, std::vector<Mat2> rotations);

    RotationKind kind_;
    PauliCoeffs assistant_;
    Mat2 assistant_matrix_;
    std::vector<Mat2> rotations_;
};

/// A checkable forgery certificate: the message |M0>, the signature-side
/// operator Q, the common direction U|M0> all conjugations map |M0> to, and
/// the deviation value the certificate was verified at.
///
/// Only the action of U on |M0> is determined by the construction, so the
/// witness stores the target state rather than a fabricated full unitary;
/// complete_target_unitary() extends it when an operator is needed.
struct ForgeryWitness {
    Ket2 message;
    Mat2 q_op;
    Ket2 target;
    double deviation = 0.0;
};

/// Any unitary U with U|message> = |target>, built by extending both states
/// to orthonormal bases and mapping one onto the other.
Mat2 complete_target_unitary(const ForgeryWitness& w);

/// Best point found by the numerical search oracle.
struct SearchResult {
    double min_deviation = 0.0;
    PauliCoeffs best_q;
    Ket2 best_message;
    std::size_t starts = 0;
    std::uint64_t seed = 0;
    bool lemma1_restricted = false;
};

/// The conjugation C_{jk}(Q) = R_j^dag W^dag sigma_k^dag Q sigma_k W R_j.
/// j indexes the scheme's rotation list, k runs over Z_4.
Mat2 conjugation(const SchemeSpec& scheme, const Mat2& q, std::size_t j, int k);

/// Worst pairwise phase-misalignment of the conjugated states:
///
///   max over pairs (j,k), (j',k') of  1 - |<M| C_{j'k'}(Q)^dag C_{jk}(Q) |M>|.
///
/// Zero exactly when all C_{jk}(Q)|M> agree up to phase, i.e. when a valid
/// target direction U|M> exists; the common direction is then C_{00}(Q)|M>.
double deviation(const SchemeSpec& scheme, const Mat2& q, const Ket2& m);

/// Two-rotation witness: Q = sigma_1 and M0 an eigenvector of
/// C_{00}^dag C_{10}, which exists for every assistant unitary, so the
/// returned witness always verifies. Requires kind two_general.
ForgeryWitness find_two_rotation_witness(const SchemeSpec& scheme);

struct ThreeRotationDecision {
    bool forgeable = false;
    std::optional<ForgeryWitness> witness;   // present when forgeable
    ClassificationReport report;             // always populated
};

/// Classifies the assistant unitary over all six permutations and, when W
/// is a member of some W_{lmn}, constructs a verified witness.
/// Requires kind three_pauli.
ThreeRotationDecision classify_three_rotation(const SchemeSpec& scheme, double tol = kAnalyticTol);

/// Witness construction for a three-Pauli scheme whose assistant satisfies
/// |alpha_l beta_m gamma_n| <= tol. Tries Q in {sigma_1, sigma_2, sigma_3}
/// (starting with sigma_l), partitions the conjugations C_{j0}(Q) into
/// phase classes, picks M0 from the class structure (any message for one
/// class, an eigenvector of A^dag B for two, a common eigenvector for
/// three) and accepts the first candidate whose deviation passes tol.
/// Exhausting all candidates would contradict the classification theorem
/// and raises InternalInconsistencyError.
ForgeryWitness construct_three_rotation_witness(const SchemeSpec& scheme, Perm perm,
                                                double tol = kAnalyticTol);

/// Structural restriction on forgery operators in three-Pauli schemes: true
/// iff the polynomial
///
///   q0^2 q1^2 q2^2 + q0^2 q2^2 q3^2 + q0^2 q1^2 q3^2 + q1^2 q2^2 q3^2
///
/// is <= tol, i.e. at least two of the four coefficients vanish.
bool lemma1_filter(const PauliCoeffs& q, double tol = kAlgebraicTol);

/// Multi-start minimization of deviation(scheme, Q, M) over Q on the unit
/// coefficient sphere (outside a 1e-3 phase-neighborhood of the identity)
/// and M on the state sphere. Coordinate descent with exact 1-D line
/// searches along sphere geodesics; per-start sub-seeds follow split_seed,
/// and results are merged in start order, so the outcome is deterministic
/// for a fixed seed regardless of thread count. `threads` 0 picks the
/// hardware concurrency.
SearchResult brute_force_search(const SchemeSpec& scheme, std::size_t starts, std::uint64_t seed,
                                bool restrict_lemma1, std::size_t threads = 0);

}  // namespace aqsforge

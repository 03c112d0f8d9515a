#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aqsforge/forgery.hpp"

namespace aqsforge {

/// The shared key (j, k): rotation index and encryption index.
struct SecretKey {
    std::size_t j{};
    int k{};
    bool operator==(const SecretKey&) const = default;
};

struct SignedPair {
    Ket2 message;
    Ket2 signature;
};

struct VerifyDecision {
    bool valid = false;
    double gap = 0.0;  // 1 - |overlap| between message and recovered state
};

struct SwapTestOutcome {
    long long accept_count = 0;
    bool valid = false;  // all copies accepted
};

struct KeyVerdict {
    SecretKey key;
    bool accepted = false;
    double overlap_gap = 0.0;
    std::optional<long long> accept_count;  // swap-test mode only
};

struct SwapTestStats {
    long long copies = 0;
    long long accept_count = 0;  // summed over keys
};

/// Per-key outcome of replaying a forged pair against every key.
struct AttackReport {
    std::vector<KeyVerdict> verdicts;
    bool all_keys_fooled = false;
    std::optional<SwapTestStats> swap_test_stats;
};

struct AttackMode {
    bool swap_test = false;
    long long copies = 0;
    std::uint64_t seed = 0;
};

/// Uniform key over the scheme's (j, k) space; deterministic per seed.
SecretKey keygen(const SchemeSpec& scheme, std::uint64_t seed);

/// |S> = E_k R_j |M> = sigma_k W R_j |M>.
Ket2 sign(const SchemeSpec& scheme, const Ket2& m, const SecretKey& key);

/// Valid iff |M'> equals R_j^dag W^dag sigma_k^dag |S'> up to global phase.
VerifyDecision verify(const SchemeSpec& scheme, const SignedPair& pair, const SecretKey& key,
                      double tol = kAnalyticTol);

/// Statistical comparator: each copy accepts independently with probability
/// (1 + |<M'|recovered>|^2) / 2. One rejection certifies the states differ,
/// so the decision is valid only when every copy accepts.
SwapTestOutcome swap_test_verify(const SignedPair& pair, const SecretKey& key,
                                 const SchemeSpec& scheme, long long copies, std::uint64_t seed);

/// Checks the encryption identities: for random pure states rho, both
///   (1/4) sum_k E_k rho E_k^dag        and
///   (1/8) sum_jk E_k R_j rho R_j^dag E_k^dag
/// equal I/2 for any assistant unitary (the rotation pair is the standard
/// sigma_1/sigma_3 one). Returns the worst entrywise residual seen.
double encryption_identity_check(const PauliCoeffs& w, std::size_t samples, std::uint64_t seed);

/// Replays the forgery against every key: the forged signature is
/// Q sign(M0, (j,k)), the forged message is the witness target, and each
/// verdict comes from verify (or swap_test_verify). The witness is
/// re-verified at verify_tol first; a failing one is rejected with
/// ContractError.
AttackReport run_attack(const SchemeSpec& scheme, const ForgeryWitness& witness,
                        const AttackMode& mode, double verify_tol = kAnalyticTol);

}  // namespace aqsforge

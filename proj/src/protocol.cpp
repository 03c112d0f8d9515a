#include "aqsforge/protocol.hpp"

#include <cmath>

#include "aqsforge/rng.hpp"

namespace aqsforge {

namespace {

void require_key(const SchemeSpec& scheme, const SecretKey& key, const char* what) {
    if (key.j >= scheme.rotation_count()) {
        throw ContractError(std::string(what) + ": rotation index out of range");
    }
    if (key.k < 0 || key.k > 3) {
        throw ContractError(std::string(what) + ": encryption index out of range");
    }
}

/// R_j^dag W^dag sigma_k |S>, the state the verifier compares against |M>.
Ket2 recover(const SchemeSpec& scheme, const Ket2& s, const SecretKey& key) {
    const Mat2 v = sigma(key.k) * (scheme.assistant_matrix() * scheme.rotations()[key.j]);
    return v.adjoint() * s;
}

}  // namespace

SecretKey keygen(const SchemeSpec& scheme, std::uint64_t seed) {
    Rng rng(seed);
    SecretKey key;
    key.j = rng.index(scheme.rotation_count());
    key.k = static_cast<int>(rng.index(4));
    return key;
}

Ket2 sign(const SchemeSpec& scheme, const Ket2& m, const SecretKey& key) {
    require_key(scheme, key, "sign");
    require_unit(m, kAnalyticTol, "sign");
    return sigma(key.k) * (scheme.assistant_matrix() * (scheme.rotations()[key.j] * m));
}

VerifyDecision verify(const SchemeSpec& scheme, const SignedPair& pair, const SecretKey& key,
                      double tol) {
    require_key(scheme, key, "verify");
    require_unit(pair.message, kAnalyticTol, "verify");
    require_unit(pair.signature, kAnalyticTol, "verify");
    const PhaseDecision d = phase_equal_states(pair.message, recover(scheme, pair.signature, key), tol);
    return VerifyDecision{d.equivalent, d.gap};
}

SwapTestOutcome swap_test_verify(const SignedPair& pair, const SecretKey& key,
                                 const SchemeSpec& scheme, long long copies, std::uint64_t seed) {
    require_key(scheme, key, "swap_test_verify");
    require_unit(pair.message, kAnalyticTol, "swap_test_verify");
    require_unit(pair.signature, kAnalyticTol, "swap_test_verify");
    if (copies <= 0) {
        throw ContractError("swap_test_verify: copies must be positive");
    }
    const Ket2 rec = recover(scheme, pair.signature, key);
    const double overlap2 = std::norm(inner(pair.message, rec.normalized()));
    const double p_accept = 0.5 * (1.0 + overlap2);
    Rng rng(seed);
    SwapTestOutcome out;
    for (long long i = 0; i < copies; ++i) {
        if (rng.uniform() >= p_accept) {
            // One rejection already certifies inequality; the comparator
            // stops consuming copies.
            out.valid = false;
            return out;
        }
        ++out.accept_count;
    }
    out.valid = true;
    return out;
}

double encryption_identity_check(const PauliCoeffs& w, std::size_t samples, std::uint64_t seed) {
    if (samples == 0) {
        throw ContractError("encryption_identity_check: samples must be positive");
    }
    const Mat2 wm = coeffs_to_matrix(w);
    const Mat2 rotations[2] = {sigma(1), sigma(3)};
    Rng rng(seed);
    double worst = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        const Ket2 psi =
            Ket2{Complex(rng.gaussian(), rng.gaussian()), Complex(rng.gaussian(), rng.gaussian())}
                .normalized();
        const Mat2 rho{psi.c0 * std::conj(psi.c0), psi.c0 * std::conj(psi.c1),
                       psi.c1 * std::conj(psi.c0), psi.c1 * std::conj(psi.c1)};
        Mat2 one_step{};
        Mat2 two_step{};
        for (int k = 0; k < 4; ++k) {
            const Mat2 ek = sigma(k) * wm;
            one_step = one_step + ek * rho * ek.adjoint();
            for (const Mat2& r : rotations) {
                const Mat2 ekr = ek * r;
                two_step = two_step + ekr * rho * ekr.adjoint();
            }
        }
        const Mat2 half = Complex(0.5) * Mat2::identity();
        worst = std::max(worst, (Complex(0.25) * one_step - half).max_abs());
        worst = std::max(worst, (Complex(0.125) * two_step - half).max_abs());
    }
    return worst;
}

AttackReport run_attack(const SchemeSpec& scheme, const ForgeryWitness& witness,
                        const AttackMode& mode, double verify_tol) {
    require_unit(witness.message, kAnalyticTol, "run_attack");
    require_unit(witness.target, kAnalyticTol, "run_attack");
    require_unitary(witness.q_op, kAnalyticTol, "run_attack");
    const double dev = deviation(scheme, witness.q_op, witness.message);
    if (dev > verify_tol) {
        throw ContractError("run_attack: witness fails verification against this scheme");
    }

    AttackReport report;
    SwapTestStats stats;
    stats.copies = mode.copies;
    bool all = true;
    for (std::size_t j = 0; j < scheme.rotation_count(); ++j) {
        for (int k = 0; k < 4; ++k) {
            const SecretKey key{j, k};
            const Ket2 s = sign(scheme, witness.message, key);
            const SignedPair forged{witness.target, (witness.q_op * s).normalized()};
            KeyVerdict verdict;
            verdict.key = key;
            const VerifyDecision vd = verify(scheme, forged, key);
            verdict.overlap_gap = vd.gap;
            if (mode.swap_test) {
                const std::uint64_t sub = split_seed(mode.seed, j * 4 + static_cast<std::uint64_t>(k));
                const SwapTestOutcome out =
                    swap_test_verify(forged, key, scheme, mode.copies, sub);
                verdict.accepted = out.valid;
                verdict.accept_count = out.accept_count;
                stats.accept_count += out.accept_count;
            } else {
                verdict.accepted = vd.valid;
            }
            all = all && verdict.accepted;
            report.verdicts.push_back(verdict);
        }
    }
    report.all_keys_fooled = all;
    if (mode.swap_test) {
        report.swap_test_stats = stats;
    }
    return report;
}

}  // namespace aqsforge

#include "aqsforge/pauli.hpp"

#include <cmath>

namespace aqsforge {

PauliCoeffs PauliCoeffs::normalized(double w0, double w1, double w2, double w3) {
    const double n = std::sqrt(w0 * w0 + w1 * w1 + w2 * w2 + w3 * w3);
    if (!(n > 1e-150)) {
        throw ContractError("PauliCoeffs::normalized: near-zero coefficient vector");
    }
    PauliCoeffs w{w0 / n, w1 / n, w2 / n, w3 / n};
    bool flip = false;
    if (w.w0 < -kAlgebraicTol) {
        flip = true;
    } else if (std::abs(w.w0) <= kAlgebraicTol) {
        for (double c : {w.w1, w.w2, w.w3}) {
            if (std::abs(c) > kAlgebraicTol) {
                flip = c < 0.0;
                break;
            }
        }
    }
    if (flip) {
        w = PauliCoeffs{-w.w0, -w.w1, -w.w2, -w.w3};
    }
    return w;
}

double PauliCoeffs::norm() const {
    return std::sqrt(w0 * w0 + w1 * w1 + w2 * w2 + w3 * w3);
}

bool PauliCoeffs::is_unit(double tol) const { return std::abs(norm() - 1.0) <= tol; }

double PauliCoeffs::operator[](int l) const {
    switch (l) {
        case 0: return w0;
        case 1: return w1;
        case 2: return w2;
        case 3: return w3;
        default: throw ContractError("PauliCoeffs::operator[]: index out of range");
    }
}

const std::array<Perm, 6>& all_perms() {
    static const std::array<Perm, 6> perms = {{
        {1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1},
    }};
    return perms;
}

Mat2 coeffs_to_matrix(const PauliCoeffs& w) {
    if (!w.is_unit()) {
        throw ContractError("coeffs_to_matrix: coefficients are not unit-norm");
    }
    // w0 s0 + i w1 s1 - i w2 s2 + i w3 s3
    return Mat2{Complex(w.w0, w.w3), Complex(-w.w2, w.w1),
                Complex(w.w2, w.w1), Complex(w.w0, -w.w3)};
}

PauliCoeffs matrix_to_coeffs(const Mat2& m) {
    require_unitary(m, kAnalyticTol, "matrix_to_coeffs");
    // A unitary is e^{i phi} times a determinant-one matrix; dividing by
    // either square root of det lands on the coefficient form, and
    // normalized() then settles which of the two roots is reported.
    const Complex root = std::sqrt(m.det());
    const Mat2 u = (1.0 / root) * m;
    const double w0 = 0.5 * (u.a00 + u.a11).real();
    const double w1 = 0.5 * (u.a01 + u.a10).imag();
    const double w2 = 0.5 * (u.a10 - u.a01).real();
    const double w3 = 0.5 * (u.a00 - u.a11).imag();
    const PauliCoeffs w = PauliCoeffs::normalized(w0, w1, w2, w3);
    const Mat2 rebuilt = coeffs_to_matrix(w);
    const double mismatch =
        std::min((rebuilt - u).max_abs(), (rebuilt + u).max_abs());
    if (mismatch > 1e-7) {
        throw InternalInconsistencyError("matrix_to_coeffs: reconstruction mismatch");
    }
    return w;
}

AbgTriple abg(const PauliCoeffs& w, Perm perm) {
    bool seen[4] = {false, false, false, false};
    for (int idx : {perm.l, perm.m, perm.n}) {
        if (idx < 1 || idx > 3 || seen[idx]) {
            throw ContractError("abg: perm must be a permutation of {1,2,3}");
        }
        seen[idx] = true;
    }
    if (!w.is_unit()) {
        throw ContractError("abg: coefficients are not unit-norm");
    }
    const double wl = w[perm.l];
    const double wm = w[perm.m];
    const double wn = w[perm.n];
    AbgTriple t;
    t.perm = perm;
    t.alpha = w.w0 * w.w0 + wl * wl - 0.5;
    t.beta = w.w0 * wm + wn * wl;
    t.gamma = w.w0 * wn - wl * wm;
    return t;
}

double ClassificationReport::min_abs_product() const {
    double best = std::abs(triples[0].product());
    for (const AbgTriple& t : triples) {
        best = std::min(best, std::abs(t.product()));
    }
    return best;
}

ClassificationReport classify(const PauliCoeffs& w, double tol) {
    if (!(tol >= 0.0)) {
        throw ContractError("classify: tolerance must be non-negative");
    }
    ClassificationReport r;
    r.tol = tol;
    const auto& perms = all_perms();
    for (std::size_t i = 0; i < perms.size(); ++i) {
        r.triples[i] = abg(w, perms[i]);
        if (std::abs(r.triples[i].product()) <= tol) {
            r.member_of.push_back(perms[i]);
        }
    }
    r.forgeable = !r.member_of.empty();
    return r;
}

PauliCoeffs haar_sample_one(Rng& rng) {
    // Four gaussians normalized land uniformly on the 3-sphere, which is the
    // Haar distribution in this parametrization; normalized() collapses the
    // +/-W double cover.
    double c[4];
    double n2;
    do {
        n2 = 0.0;
        for (double& x : c) {
            x = rng.gaussian();
            n2 += x * x;
        }
    } while (!(n2 > 1e-150));
    return PauliCoeffs::normalized(c[0], c[1], c[2], c[3]);
}

std::vector<PauliCoeffs> haar_sample(std::uint64_t seed, std::size_t count) {
    Rng rng(seed);
    std::vector<PauliCoeffs> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(haar_sample_one(rng));
    }
    return out;
}

}  // namespace aqsforge

#include "aqsforge/forgery.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace aqsforge {

namespace {

/// Phase distance of Q from the identity below which the search refuses to
/// report a point: such Q forge only trivially.
constexpr double kIdentityCap = 1e-3;

Ket2 orthogonal_state(const Ket2& v) {
    return Ket2{-std::conj(v.c1), std::conj(v.c0)};
}

Mat2 mat_from_raw(const double q[4]) {
    return Mat2{Complex(q[0], q[3]), Complex(-q[2], q[1]),
                Complex(q[2], q[1]), Complex(q[0], -q[3])};
}

Ket2 ket_from_bloch(const double n[3]) {
    const double c = std::sqrt(std::max(0.0, 0.5 * (1.0 + n[2])));
    const double s = std::sqrt(std::max(0.0, 0.5 * (1.0 - n[2])));
    const double r = std::hypot(n[0], n[1]);
    if (r < 1e-300) {
        return n[2] >= 0.0 ? Ket2{1.0, 0.0} : Ket2{0.0, 1.0};
    }
    return Ket2{c, Complex(n[0] / r, n[1] / r) * s};
}

/// Fast deviation evaluator over the precomputed products V_i = sigma_k W R_j.
/// States are compared through their Bloch vectors:
/// |<a|b>| = sqrt((1 + n_a . n_b) / 2).
struct Evaluator {
    std::vector<Mat2> v;       // V_i
    std::vector<Mat2> c;       // C_i = V_i^dag Q V_i for the prepared Q
    std::vector<Ket2> t;       // t_i = V_i m for the prepared m
    std::vector<std::array<double, 3>> bloch;

    explicit Evaluator(const SchemeSpec& scheme) {
        const Mat2& w = scheme.assistant_matrix();
        for (const Mat2& r : scheme.rotations()) {
            const Mat2 wr = w * r;
            for (int k = 0; k < 4; ++k) {
                v.push_back(sigma(k) * wr);
            }
        }
        c.resize(v.size());
        t.resize(v.size());
        bloch.resize(v.size());
    }

    void prepare_q(const double q[4]) {
        const Mat2 qm = mat_from_raw(q);
        for (std::size_t i = 0; i < v.size(); ++i) {
            c[i] = v[i].adjoint() * (qm * v[i]);
        }
    }

    double eval_m(const double n[3]) {
        const Ket2 m = ket_from_bloch(n);
        for (std::size_t i = 0; i < v.size(); ++i) {
            bloch[i] = bloch_of(c[i] * m);
        }
        return min_pair_gap();
    }

    void prepare_m(const double n[3]) {
        const Ket2 m = ket_from_bloch(n);
        for (std::size_t i = 0; i < v.size(); ++i) {
            t[i] = v[i] * m;
        }
    }

    double eval_q(const double q[4]) {
        const Mat2 qm = mat_from_raw(q);
        for (std::size_t i = 0; i < v.size(); ++i) {
            bloch[i] = bloch_of(v[i].adjoint() * (qm * t[i]));
        }
        return min_pair_gap();
    }

  private:
    static std::array<double, 3> bloch_of(const Ket2& s) {
        const Complex cross = std::conj(s.c0) * s.c1;
        return {2.0 * cross.real(), 2.0 * cross.imag(),
                std::norm(s.c0) - std::norm(s.c1)};
    }

    double min_pair_gap() const {
        double dmin = 1.0;
        for (std::size_t i = 0; i < bloch.size(); ++i) {
            for (std::size_t j = i + 1; j < bloch.size(); ++j) {
                const double d = bloch[i][0] * bloch[j][0] + bloch[i][1] * bloch[j][1] +
                                 bloch[i][2] * bloch[j][2];
                dmin = std::min(dmin, d);
            }
        }
        const double ov2 = std::clamp(0.5 * (1.0 + dmin), 0.0, 1.0);
        return 1.0 - std::sqrt(ov2);
    }
};

template <std::size_t N>
void normalize_raw(double (&x)[N]) {
    double n2 = 0.0;
    for (double c : x) {
        n2 += c * c;
    }
    const double n = std::sqrt(n2);
    for (double& c : x) {
        c /= n;
    }
}

/// Gaussian direction orthonormalized against the given unit vectors.
/// Retries until the residual is well conditioned.
template <std::size_t N>
void tangent_direction(Rng& rng, const std::vector<const double*>& basis, double (&out)[N]) {
    while (true) {
        double n2 = 0.0;
        for (double& c : out) {
            c = rng.gaussian();
        }
        for (const double* b : basis) {
            double dot = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                dot += out[i] * b[i];
            }
            for (std::size_t i = 0; i < N; ++i) {
                out[i] -= dot * b[i];
            }
        }
        for (double c : out) {
            n2 += c * c;
        }
        if (n2 > 1e-6) {
            normalize_raw(out);
            return;
        }
    }
}

struct StartOutcome {
    double value = 2.0;
    double q[4] = {1.0, 0.0, 0.0, 0.0};
    double n[3] = {0.0, 0.0, 1.0};
};

constexpr int kGridPoints = 32;
constexpr int kGoldenIters = 24;
constexpr int kMaxRounds = 200;
constexpr double kRoundImprovementFloor = 1e-12;

/// Minimizes value(theta) over [0, 2pi): coarse grid, then golden-section
/// refinement of the best grid cell. Returns {theta, value}.
template <typename F>
std::pair<double, double> circle_search(const F& value) {
    const double step = 2.0 * M_PI / kGridPoints;
    double best_t = 0.0;
    double best_v = value(0.0);
    for (int i = 1; i < kGridPoints; ++i) {
        const double t = step * i;
        const double v = value(t);
        if (v < best_v) {
            best_v = v;
            best_t = t;
        }
    }
    double lo = best_t - step;
    double hi = best_t + step;
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double t1 = hi - inv_phi * (hi - lo);
    double t2 = lo + inv_phi * (hi - lo);
    double v1 = value(t1);
    double v2 = value(t2);
    for (int i = 0; i < kGoldenIters; ++i) {
        if (v1 <= v2) {
            hi = t2;
            t2 = t1;
            v2 = v1;
            t1 = hi - inv_phi * (hi - lo);
            v1 = value(t1);
        } else {
            lo = t1;
            t1 = t2;
            v1 = v2;
            t2 = lo + inv_phi * (hi - lo);
            v2 = value(t2);
        }
    }
    if (v1 < best_v) {
        best_v = v1;
        best_t = t1;
    }
    if (v2 < best_v) {
        best_v = v2;
        best_t = t2;
    }
    return {best_t, best_v};
}

const std::array<std::array<int, 2>, 6>& coefficient_pairs() {
    static const std::array<std::array<int, 2>, 6> pairs = {{
        {{0, 1}}, {{0, 2}}, {{0, 3}}, {{1, 2}}, {{1, 3}}, {{2, 3}},
    }};
    return pairs;
}

StartOutcome run_start(const Evaluator& shared, bool restricted, std::uint64_t sub_seed) {
    Rng rng(sub_seed);
    Evaluator ev = shared;  // private copy: prepare_* buffers are per-thread

    StartOutcome out;
    int pair0 = 0;
    int pair1 = 1;
    if (restricted) {
        const auto& pr = coefficient_pairs()[rng.index(6)];
        pair0 = pr[0];
        pair1 = pr[1];
        out.q[0] = out.q[1] = out.q[2] = out.q[3] = 0.0;
        double theta;
        do {
            theta = 2.0 * M_PI * rng.uniform();
            out.q[pair0] = std::cos(theta);
            out.q[pair1] = std::sin(theta);
        } while (std::abs(out.q[0]) > 1.0 - kIdentityCap);
    } else {
        do {
            const PauliCoeffs w = haar_sample_one(rng);
            out.q[0] = w.w0;
            out.q[1] = w.w1;
            out.q[2] = w.w2;
            out.q[3] = w.w3;
        } while (std::abs(out.q[0]) > 1.0 - kIdentityCap);
    }
    for (double& c : out.n) {
        c = rng.gaussian();
    }
    double bn = std::hypot(std::hypot(out.n[0], out.n[1]), out.n[2]);
    while (!(bn > 1e-6)) {
        for (double& c : out.n) {
            c = rng.gaussian();
        }
        bn = std::hypot(std::hypot(out.n[0], out.n[1]), out.n[2]);
    }
    for (double& c : out.n) {
        c /= bn;
    }

    ev.prepare_q(out.q);
    out.value = ev.eval_m(out.n);

    for (int round = 0; round < kMaxRounds; ++round) {
        const double before = out.value;

        // Message step: two great-circle moves on the Bloch sphere.
        ev.prepare_q(out.q);
        for (int axis = 0; axis < 2; ++axis) {
            double d[3];
            tangent_direction(rng, {out.n}, d);
            // Trial points are renormalized before evaluation, and the accept
            // replays the same arithmetic, so the stored point is exactly the
            // one whose value was measured.
            auto point = [&](double theta, double (&n)[3]) {
                const double ct = std::cos(theta);
                const double st = std::sin(theta);
                for (int i = 0; i < 3; ++i) {
                    n[i] = ct * out.n[i] + st * d[i];
                }
                normalize_raw(n);
            };
            auto value = [&](double theta) {
                double n[3];
                point(theta, n);
                return ev.eval_m(n);
            };
            auto [theta, val] = circle_search(value);
            if (val < out.value) {
                double n[3];
                point(theta, n);
                for (int i = 0; i < 3; ++i) {
                    out.n[i] = n[i];
                }
                out.value = val;
            }
        }

        // Operator step; points inside the identity neighborhood are skipped.
        // Each direction is built against the current operator, so the basis
        // handed to the orthogonalizer is always a single unit vector.
        ev.prepare_m(out.n);
        const int moves = restricted ? 1 : 3;
        for (int mv = 0; mv < moves; ++mv) {
            double d[4];
            if (restricted) {
                d[0] = d[1] = d[2] = d[3] = 0.0;
                d[pair0] = -out.q[pair1];
                d[pair1] = out.q[pair0];
                const double nn = std::hypot(d[pair0], d[pair1]);
                if (!(nn > 1e-12)) {
                    break;
                }
                d[pair0] /= nn;
                d[pair1] /= nn;
            } else {
                tangent_direction(rng, {out.q}, d);
            }
            auto point = [&](double theta, double (&q)[4]) {
                const double ct = std::cos(theta);
                const double st = std::sin(theta);
                for (int i = 0; i < 4; ++i) {
                    q[i] = ct * out.q[i] + st * d[i];
                }
                normalize_raw(q);
            };
            auto value = [&](double theta) {
                double q[4];
                point(theta, q);
                if (std::abs(q[0]) > 1.0 - kIdentityCap) {
                    return 2.0;
                }
                return ev.eval_q(q);
            };
            auto [theta, val] = circle_search(value);
            if (val < out.value) {
                double q[4];
                point(theta, q);
                for (int i = 0; i < 4; ++i) {
                    out.q[i] = q[i];
                }
                out.value = val;
            }
        }

        if (before - out.value < kRoundImprovementFloor) {
            break;
        }
    }
    return out;
}

}  // namespace

SchemeSpec::SchemeSpec(RotationKind kind, PauliCoeffs assistant, std::vector<Mat2> rotations)
    : kind_(kind),
      assistant_(assistant),
      assistant_matrix_(coeffs_to_matrix(assistant)),
      rotations_(std::move(rotations)) {}

SchemeSpec SchemeSpec::two_rotation(const PauliCoeffs& assistant, const Mat2& r0, const Mat2& r1) {
    require_unitary(r0, kAnalyticTol, "SchemeSpec::two_rotation");
    require_unitary(r1, kAnalyticTol, "SchemeSpec::two_rotation");
    return SchemeSpec(RotationKind::two_general, assistant, {r0, r1});
}

SchemeSpec SchemeSpec::three_pauli(const PauliCoeffs& assistant) {
    return SchemeSpec(RotationKind::three_pauli, assistant, {sigma(1), sigma(2), sigma(3)});
}

SchemeSpec SchemeSpec::three_pauli(const PauliCoeffs& assistant, const std::vector<Mat2>& rotations) {
    if (rotations.size() != 3) {
        throw ContractError("SchemeSpec::three_pauli: exactly three rotations required");
    }
    bool used[4] = {false, false, false, false};
    for (const Mat2& r : rotations) {
        require_unitary(r, kAnalyticTol, "SchemeSpec::three_pauli");
        if (phase_equal_ops(r, sigma(0)).equivalent) {
            throw ContractError("SchemeSpec::three_pauli: identity rotation not allowed");
        }
        int match = 0;
        for (int a = 1; a <= 3; ++a) {
            if (phase_equal_ops(r, sigma(a)).equivalent) {
                match = a;
                break;
            }
        }
        if (match == 0) {
            throw ContractError("SchemeSpec::three_pauli: rotation is not a Pauli up to phase");
        }
        if (used[match]) {
            throw ContractError("SchemeSpec::three_pauli: rotations must cover distinct Paulis");
        }
        used[match] = true;
    }
    return SchemeSpec(RotationKind::three_pauli, assistant, rotations);
}

Mat2 complete_target_unitary(const ForgeryWitness& w) {
    require_unit(w.message, kAnalyticTol, "complete_target_unitary");
    require_unit(w.target, kAnalyticTol, "complete_target_unitary");
    const Ket2 m = w.message.normalized();
    const Ket2 t = w.target.normalized();
    const Ket2 mp = orthogonal_state(m);
    const Ket2 tp = orthogonal_state(t);
    // |t><m| + |t_perp><m_perp|
    return Mat2{t.c0 * std::conj(m.c0) + tp.c0 * std::conj(mp.c0),
                t.c0 * std::conj(m.c1) + tp.c0 * std::conj(mp.c1),
                t.c1 * std::conj(m.c0) + tp.c1 * std::conj(mp.c0),
                t.c1 * std::conj(m.c1) + tp.c1 * std::conj(mp.c1)};
}

Mat2 conjugation(const SchemeSpec& scheme, const Mat2& q, std::size_t j, int k) {
    if (j >= scheme.rotation_count()) {
        throw ContractError("conjugation: rotation index out of range");
    }
    if (k < 0 || k > 3) {
        throw ContractError("conjugation: encryption index out of range");
    }
    require_unitary(q, kAnalyticTol, "conjugation");
    const Mat2 v = sigma(k) * (scheme.assistant_matrix() * scheme.rotations()[j]);
    return v.adjoint() * (q * v);
}

double deviation(const SchemeSpec& scheme, const Mat2& q, const Ket2& m) {
    require_unitary(q, kAnalyticTol, "deviation");
    require_unit(m, kAnalyticTol, "deviation");
    std::vector<Ket2> states;
    states.reserve(scheme.key_count());
    for (std::size_t j = 0; j < scheme.rotation_count(); ++j) {
        for (int k = 0; k < 4; ++k) {
            states.push_back(conjugation(scheme, q, j, k) * m);
        }
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < states.size(); ++a) {
        for (std::size_t b = a + 1; b < states.size(); ++b) {
            worst = std::max(worst, 1.0 - std::abs(inner(states[a], states[b])));
        }
    }
    return worst;
}

ForgeryWitness find_two_rotation_witness(const SchemeSpec& scheme) {
    if (scheme.kind() != RotationKind::two_general) {
        throw ContractError("find_two_rotation_witness: scheme is not two-rotation");
    }
    const Mat2 q = sigma(1);
    const Mat2 a0 = conjugation(scheme, q, 0, 0);
    const Mat2 a1 = conjugation(scheme, q, 1, 0);
    const EigenSystem es = eigenpairs(a0.adjoint() * a1);
    ForgeryWitness w;
    w.message = es.pairs.front().vector.canonical();
    w.q_op = q;
    w.target = (a0 * w.message).canonical();
    w.deviation = deviation(scheme, q, w.message);
    if (w.deviation > kAnalyticTol) {
        throw InternalInconsistencyError("find_two_rotation_witness: witness failed verification");
    }
    return w;
}

ThreeRotationDecision classify_three_rotation(const SchemeSpec& scheme, double tol) {
    if (scheme.kind() != RotationKind::three_pauli) {
        throw ContractError("classify_three_rotation: scheme is not three-Pauli");
    }
    ThreeRotationDecision d;
    d.report = classify(scheme.assistant(), tol);
    d.forgeable = d.report.forgeable;
    if (d.forgeable) {
        d.witness = construct_three_rotation_witness(scheme, d.report.member_of.front(), tol);
    }
    return d;
}

ForgeryWitness construct_three_rotation_witness(const SchemeSpec& scheme, Perm perm, double tol) {
    if (scheme.kind() != RotationKind::three_pauli) {
        throw ContractError("construct_three_rotation_witness: scheme is not three-Pauli");
    }
    abg(scheme.assistant(), perm);  // validates perm

    for (int a : {perm.l, perm.m, perm.n}) {
        const Mat2 q = sigma(a);
        const Mat2 c0 = conjugation(scheme, q, 0, 0);
        const Mat2 c1 = conjugation(scheme, q, 1, 0);
        const Mat2 c2 = conjugation(scheme, q, 2, 0);
        const Mat2 g1 = c0.adjoint() * c1;
        const Mat2 g2 = c0.adjoint() * c2;

        // Candidate messages, ordered by how specific the class structure
        // they serve is: a common eigenvector handles three distinct phase
        // classes (and degrades gracefully to fewer), pairwise eigenvectors
        // handle two, the basis states handle one.
        std::vector<Ket2> candidates;
        if (auto v = common_eigenvector(g1, g2, tol)) {
            candidates.push_back(*v);
        }
        for (const Mat2& g : {g1, g2, c1.adjoint() * c2}) {
            const EigenSystem es = eigenpairs(g);
            if (!es.degenerate) {
                for (const EigenPair& p : es.pairs) {
                    candidates.push_back(p.vector);
                }
            }
        }
        candidates.push_back(Ket2{1.0, 0.0});
        candidates.push_back(Ket2{0.0, 1.0});

        for (const Ket2& m : candidates) {
            const double dev = deviation(scheme, q, m);
            if (dev <= tol) {
                ForgeryWitness w;
                w.message = m.canonical();
                w.q_op = q;
                w.target = (c0 * w.message).canonical();
                w.deviation = dev;
                return w;
            }
        }
    }
    throw InternalInconsistencyError(
        "construct_three_rotation_witness: no candidate message verified");
}

bool lemma1_filter(const PauliCoeffs& q, double tol) {
    const double s0 = q.w0 * q.w0;
    const double s1 = q.w1 * q.w1;
    const double s2 = q.w2 * q.w2;
    const double s3 = q.w3 * q.w3;
    const double poly = s0 * s1 * s2 + s0 * s2 * s3 + s0 * s1 * s3 + s1 * s2 * s3;
    return poly <= tol;
}

SearchResult brute_force_search(const SchemeSpec& scheme, std::size_t starts, std::uint64_t seed,
                                bool restrict_lemma1, std::size_t threads) {
    if (starts == 0) {
        throw ContractError("brute_force_search: starts must be positive");
    }
    const Evaluator shared(scheme);
    std::vector<StartOutcome> outcomes(starts);
    std::size_t workers = threads ? threads : std::thread::hardware_concurrency();
    if (workers == 0) {
        workers = 1;
    }
    workers = std::min(workers, starts);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= starts) {
                return;
            }
            outcomes[i] = run_start(shared, restrict_lemma1, split_seed(seed, i));
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t i = 0; i < workers; ++i) {
            pool.emplace_back(work);
        }
        for (std::thread& th : pool) {
            th.join();
        }
    }

    // Merge in start order, so the result does not depend on scheduling.
    std::size_t best = 0;
    for (std::size_t i = 1; i < starts; ++i) {
        if (outcomes[i].value < outcomes[best].value) {
            best = i;
        }
    }
    const StartOutcome& win = outcomes[best];

    SearchResult r;
    r.best_q = PauliCoeffs::normalized(win.q[0], win.q[1], win.q[2], win.q[3]);
    r.best_message = ket_from_bloch(win.n).canonical();
    // Report the value of the public evaluator at the winning point, so the
    // result is reproducible through the public API.
    r.min_deviation = deviation(scheme, coeffs_to_matrix(r.best_q), r.best_message);
    r.starts = starts;
    r.seed = seed;
    r.lemma1_restricted = restrict_lemma1;
    return r;
}

}  // namespace aqsforge

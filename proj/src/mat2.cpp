#include "aqsforge/mat2.hpp"

#include <algorithm>
#include <cmath>

namespace aqsforge {

namespace {

constexpr double kDegenerateGap = 1e-9;
constexpr double kCanonicalPivot = 1e-9;

bool finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void require_finite(const Ket2& v, const char* what) {
    if (!finite(v.c0) || !finite(v.c1)) {
        throw ContractError(std::string(what) + ": non-finite state component");
    }
}

void require_finite(const Mat2& a, const char* what) {
    if (!finite(a.a00) || !finite(a.a01) || !finite(a.a10) || !finite(a.a11)) {
        throw ContractError(std::string(what) + ": non-finite matrix entry");
    }
}

/// Both eigenvalues of the characteristic quadratic, cancellation-safe:
/// the root farther from zero is computed from the discriminant, the other
/// from the determinant.
std::pair<Complex, Complex> char_roots(const Mat2& a) {
    const Complex tr = a.trace();
    const Complex dt = a.det();
    Complex s = std::sqrt(tr * tr - 4.0 * dt);
    if ((std::conj(tr) * s).real() < 0.0) {
        s = -s;
    }
    const Complex big = 0.5 * (tr + s);
    if (std::abs(big) > 1e-300) {
        return {big, dt / big};
    }
    return {big, 0.5 * (tr - s)};
}

/// Null direction of a rank-one matrix, from its stronger row.
Ket2 null_direction(const Mat2& n) {
    const double r0 = std::norm(n.a00) + std::norm(n.a01);
    const double r1 = std::norm(n.a10) + std::norm(n.a11);
    if (r0 >= r1) {
        return Ket2{n.a01, -n.a00}.normalized().canonical();
    }
    return Ket2{n.a11, -n.a10}.normalized().canonical();
}

/// Eigendirection for a known eigenvalue; nullopt when A - lambda I is
/// numerically zero (every direction qualifies).
std::optional<Ket2> eigvec_for(const Mat2& a, Complex lambda, double scale) {
    Mat2 n = a;
    n.a00 -= lambda;
    n.a11 -= lambda;
    if (n.max_abs() <= 1e-14 * std::max(1.0, scale)) {
        return std::nullopt;
    }
    return null_direction(n);
}

/// 1 - |<v|Av>| / ||Av||, zero iff Av is parallel to v; returns the
/// residual norm ||Av - (v^dag Av) v|| for a unit v.
double parallel_residual(const Mat2& a, const Ket2& v) {
    const Ket2 av = a * v;
    const Complex coeff = inner(v, av);
    const Ket2 r{av.c0 - coeff * v.c0, av.c1 - coeff * v.c1};
    return r.norm();
}

}  // namespace

double Ket2::norm() const { return std::sqrt(std::norm(c0) + std::norm(c1)); }

bool Ket2::is_unit(double tol) const { return std::abs(norm() - 1.0) <= tol; }

Ket2 Ket2::normalized() const {
    const double n = norm();
    if (!(n > 1e-150)) {
        throw ContractError("Ket2::normalized: near-zero vector");
    }
    return Ket2{c0 / n, c1 / n};
}

Ket2 Ket2::canonical() const {
    const Ket2 u = normalized();
    Complex pivot;
    if (std::abs(u.c0) > kCanonicalPivot) {
        pivot = u.c0;
    } else {
        pivot = u.c1;
    }
    const Complex phase = std::conj(pivot) / std::abs(pivot);
    return Ket2{phase * u.c0, phase * u.c1};
}

Complex inner(const Ket2& a, const Ket2& b) {
    return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1;
}

Mat2 Mat2::identity() { return Mat2{1.0, 0.0, 0.0, 1.0}; }

Mat2 Mat2::adjoint() const {
    return Mat2{std::conj(a00), std::conj(a10), std::conj(a01), std::conj(a11)};
}

Complex Mat2::trace() const { return a00 + a11; }

Complex Mat2::det() const { return a00 * a11 - a01 * a10; }

double Mat2::max_abs() const {
    return std::max(std::max(std::abs(a00), std::abs(a01)),
                    std::max(std::abs(a10), std::abs(a11)));
}

bool Mat2::is_unitary(double tol) const {
    const Mat2 g = adjoint() * *this - identity();
    return g.max_abs() <= tol;
}

bool Mat2::is_normal(double tol) const {
    const Mat2 c = *this * adjoint() - adjoint() * *this;
    return c.max_abs() <= tol * std::max(1.0, max_abs() * max_abs());
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
    return Mat2{a.a00 * b.a00 + a.a01 * b.a10, a.a00 * b.a01 + a.a01 * b.a11,
                a.a10 * b.a00 + a.a11 * b.a10, a.a10 * b.a01 + a.a11 * b.a11};
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
    return Mat2{a.a00 + b.a00, a.a01 + b.a01, a.a10 + b.a10, a.a11 + b.a11};
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
    return Mat2{a.a00 - b.a00, a.a01 - b.a01, a.a10 - b.a10, a.a11 - b.a11};
}

Mat2 operator*(Complex s, const Mat2& a) {
    return Mat2{s * a.a00, s * a.a01, s * a.a10, s * a.a11};
}

Ket2 operator*(const Mat2& a, const Ket2& v) {
    return Ket2{a.a00 * v.c0 + a.a01 * v.c1, a.a10 * v.c0 + a.a11 * v.c1};
}

const Mat2& sigma(int k) {
    static const Mat2 table[4] = {
        Mat2{1.0, 0.0, 0.0, 1.0},
        Mat2{0.0, 1.0, 1.0, 0.0},
        Mat2{0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0},
        Mat2{1.0, 0.0, 0.0, -1.0},
    };
    if (k < 0 || k > 3) {
        throw ContractError("sigma: index out of range");
    }
    return table[k];
}

void require_unitary(const Mat2& a, double tol, const char* what) {
    require_finite(a, what);
    if (!a.is_unitary(tol)) {
        throw ContractError(std::string(what) + ": matrix is not unitary");
    }
}

void require_unit(const Ket2& v, double tol, const char* what) {
    require_finite(v, what);
    if (!v.is_unit(tol)) {
        throw ContractError(std::string(what) + ": state is not unit-norm");
    }
}

PhaseDecision phase_equal_states(const Ket2& a, const Ket2& b, double tol) {
    require_unit(a, kAnalyticTol, "phase_equal_states");
    require_unit(b, kAnalyticTol, "phase_equal_states");
    const Complex ov = inner(a, b);
    PhaseDecision d;
    d.gap = 1.0 - std::abs(ov);
    d.theta = std::arg(ov);
    d.equivalent = d.gap <= tol;
    return d;
}

PhaseDecision phase_equal_ops(const Mat2& a, const Mat2& b, double tol) {
    require_unitary(a, kAnalyticTol, "phase_equal_ops");
    require_unitary(b, kAnalyticTol, "phase_equal_ops");
    const Complex t = (a.adjoint() * b).trace();
    PhaseDecision d;
    d.gap = 1.0 - 0.5 * std::abs(t);
    d.theta = std::arg(t);
    d.equivalent = d.gap <= tol;
    return d;
}

EigenSystem eigenpairs(const Mat2& a) {
    require_finite(a, "eigenpairs");
    if (!a.is_normal()) {
        throw UnsupportedInputError("eigenpairs: matrix is not normal");
    }
    auto [l1, l2] = char_roots(a);
    EigenSystem out;
    if (std::abs(l1 - l2) < kDegenerateGap) {
        // Within tolerance the matrix is a scalar, so the eigenspace is all
        // of C^2 and |0> is the canonical representative.
        out.degenerate = true;
        out.pairs.push_back(EigenPair{0.5 * (l1 + l2), Ket2{1.0, 0.0}});
        return out;
    }
    const double scale = a.max_abs();
    auto mk = [&](Complex lambda) {
        auto v = eigvec_for(a, lambda, scale);
        // Distinct eigenvalues of a normal matrix always leave a rank-one
        // shifted matrix, so a direction is found.
        out.pairs.push_back(EigenPair{lambda, v ? *v : Ket2{1.0, 0.0}});
    };
    mk(l1);
    mk(l2);
    auto key = [](Complex z) {
        double t = std::arg(z);
        if (t < 0.0) {
            t += 2.0 * M_PI;
        }
        return t;
    };
    if (key(out.pairs[0].value) > key(out.pairs[1].value)) {
        std::swap(out.pairs[0], out.pairs[1]);
    }
    return out;
}

std::optional<Ket2> common_eigenvector(const Mat2& a, const Mat2& b, double tol) {
    require_finite(a, "common_eigenvector");
    require_finite(b, "common_eigenvector");
    const Mat2 k = a * b - b * a;
    if (std::abs(k.det()) > tol) {
        return std::nullopt;
    }

    std::vector<Ket2> candidates;
    const double commutator_floor = 1e-12 * std::max(1.0, a.max_abs() * b.max_abs());
    if (k.max_abs() > commutator_floor) {
        // Nonzero commutator with vanishing determinant: the common
        // eigenvector must span ker(AB - BA).
        candidates.push_back(null_direction(k));
    } else {
        // Commuting pair: eigendirections of A qualify; fall back to B when
        // A is scalar, and to |0> when both are.
        const double scale_a = std::max(1.0, a.max_abs());
        auto add_from = [&](const Mat2& m, double scale) {
            auto [l1, l2] = char_roots(m);
            for (Complex lambda : {l1, l2}) {
                if (auto v = eigvec_for(m, lambda, scale)) {
                    candidates.push_back(*v);
                }
            }
        };
        add_from(a, scale_a);
        if (candidates.empty()) {
            add_from(b, std::max(1.0, b.max_abs()));
        }
        if (candidates.empty()) {
            candidates.push_back(Ket2{1.0, 0.0});
        }
    }

    for (const Ket2& v : candidates) {
        if (parallel_residual(a, v) <= tol && parallel_residual(b, v) <= tol) {
            return v.canonical();
        }
    }
    return std::nullopt;
}

}  // namespace aqsforge

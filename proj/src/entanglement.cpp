#include "tsx/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tsx {

namespace {

constexpr double kStructureTol = 1e-12;  // "this entry should be zero" threshold
constexpr double kDensityTol = 1e-10;    // Hermiticity / trace / PSD acceptance
constexpr double kConvergenceTol = 1e-12;
constexpr int kMaxQrSweeps = 200;

inline double& at(Mat4r& m, int i, int j) { return m[4 * i + j]; }
inline double at(const Mat4r& m, int i, int j) { return m[4 * i + j]; }

double frobenius_norm(const Mat4r& m) {
    double s = 0.0;
    for (double v : m) s += v * v;
    return std::sqrt(s);
}

// Parlett-Reinsch balancing: diagonal similarity scaling by powers of two
// until each row/column norm pair is roughly even.
void balance(Mat4r& m) {
    bool again = true;
    while (again) {
        again = false;
        for (int i = 0; i < 4; ++i) {
            double col = 0.0, row = 0.0;
            for (int j = 0; j < 4; ++j) {
                if (j == i) continue;
                col += std::abs(at(m, j, i));
                row += std::abs(at(m, i, j));
            }
            if (col == 0.0 || row == 0.0) continue;
            const double before = col + row;
            double factor = 1.0;
            while (col < row / 2.0) {
                col *= 2.0;
                row /= 2.0;
                factor *= 2.0;
            }
            while (col > row * 2.0) {
                col /= 2.0;
                row *= 2.0;
                factor /= 2.0;
            }
            if (col + row < 0.95 * before) {
                again = true;
                for (int j = 0; j < 4; ++j) at(m, i, j) /= factor;
                for (int j = 0; j < 4; ++j) at(m, j, i) *= factor;
            }
        }
    }
}

// Householder reduction to upper Hessenberg form.
void hessenberg(Mat4r& m) {
    for (int k = 0; k < 2; ++k) {
        double norm2 = 0.0;
        for (int i = k + 1; i < 4; ++i) norm2 += at(m, i, k) * at(m, i, k);
        if (norm2 <= 0.0) continue;
        double alpha = std::sqrt(norm2);
        if (at(m, k + 1, k) > 0.0) alpha = -alpha;

        std::array<double, 4> v{};
        v[k + 1] = at(m, k + 1, k) - alpha;
        for (int i = k + 2; i < 4; ++i) v[i] = at(m, i, k);
        double vtv = 0.0;
        for (int i = k + 1; i < 4; ++i) vtv += v[i] * v[i];
        if (vtv <= 0.0) continue;

        // rows: m <- (I - 2 v v^T / v^T v) m
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int i = k + 1; i < 4; ++i) s += v[i] * at(m, i, j);
            s = 2.0 * s / vtv;
            for (int i = k + 1; i < 4; ++i) at(m, i, j) -= s * v[i];
        }
        // columns: m <- m (I - 2 v v^T / v^T v)
        for (int i = 0; i < 4; ++i) {
            double s = 0.0;
            for (int j = k + 1; j < 4; ++j) s += at(m, i, j) * v[j];
            s = 2.0 * s / vtv;
            for (int j = k + 1; j < 4; ++j) at(m, i, j) -= s * v[j];
        }
    }
}

// Eigenvalues of a real 2x2 block whose spectrum is expected to be real.
// A slightly negative discriminant from rounding at a repeated root is
// treated as zero.
std::pair<double, double> real_eigenpair(double a, double b, double c, double d, double scale) {
    const double mean = 0.5 * (a + d);
    const double det = a * d - b * c;
    double disc = mean * mean - det;
    if (disc < 0.0) {
        if (disc < -kConvergenceTol * std::max(1.0, scale * scale))
            throw std::runtime_error(
                "eigenvalues_4x4: complex eigenvalue pair; input has no real spectrum");
        disc = 0.0;
    }
    const double s = std::sqrt(disc);
    return {mean + s, mean - s};
}

// Shifted QR iteration on an upper Hessenberg matrix, deflating from the
// bottom. Returns the four (real) eigenvalues, unsorted.
std::array<double, 4> qr_eigenvalues(Mat4r h, double scale) {
    std::array<double, 4> ev{};
    int found = 0;
    int hi = 3;
    int sweeps = 0;

    while (hi >= 0) {
        // Split where a subdiagonal entry is negligible.
        int lo = hi;
        while (lo > 0) {
            const double s = std::abs(at(h, lo - 1, lo - 1)) + std::abs(at(h, lo, lo));
            if (std::abs(at(h, lo, lo - 1)) <= kConvergenceTol * std::max(s, scale)) {
                at(h, lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }

        if (lo == hi) {
            ev[found++] = at(h, hi, hi);
            --hi;
            continue;
        }
        if (lo == hi - 1) {
            auto [e1, e2] = real_eigenpair(at(h, lo, lo), at(h, lo, hi), at(h, hi, lo),
                                           at(h, hi, hi), scale);
            ev[found++] = e1;
            ev[found++] = e2;
            hi = lo - 1;
            continue;
        }

        if (++sweeps > kMaxQrSweeps)
            throw std::runtime_error("eigenvalues_4x4: QR iteration did not converge");

        // Wilkinson-style shift from the trailing 2x2 of the active block.
        const double a = at(h, hi - 1, hi - 1);
        const double b = at(h, hi - 1, hi);
        const double c = at(h, hi, hi - 1);
        const double d = at(h, hi, hi);
        const double mean = 0.5 * (a + d);
        const double disc = mean * mean - (a * d - b * c);
        double shift = d;
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            shift = std::abs(mean + s - d) < std::abs(mean - s - d) ? mean + s : mean - s;
        } else {
            shift = mean;
        }

        for (int i = lo; i <= hi; ++i) at(h, i, i) -= shift;

        // Explicit QR step via Givens rotations on the active window.
        std::array<std::pair<double, double>, 3> rot{};
        for (int k = lo; k < hi; ++k) {
            const double x = at(h, k, k);
            const double y = at(h, k + 1, k);
            const double r = std::hypot(x, y);
            double ct = 1.0, st = 0.0;
            if (r > 0.0) {
                ct = x / r;
                st = y / r;
            }
            rot[k - lo] = {ct, st};
            for (int j = k; j <= hi; ++j) {
                const double u = at(h, k, j);
                const double v = at(h, k + 1, j);
                at(h, k, j) = ct * u + st * v;
                at(h, k + 1, j) = -st * u + ct * v;
            }
        }
        for (int k = lo; k < hi; ++k) {
            const auto [ct, st] = rot[k - lo];
            for (int i = lo; i <= hi; ++i) {
                const double u = at(h, i, k);
                const double v = at(h, i, k + 1);
                at(h, i, k) = ct * u + st * v;
                at(h, i, k + 1) = -st * u + ct * v;
            }
        }
        for (int i = lo; i <= hi; ++i) at(h, i, i) += shift;
    }
    return ev;
}

Mat4r multiply(const Mat4r& a, const Mat4r& b) {
    Mat4r out{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const double aik = at(a, i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < 4; ++j) at(out, i, j) += aik * at(b, k, j);
        }
    return out;
}

Mat4r spin_flip_real(const Mat4r& m) {
    static constexpr std::array<double, 4> sign{-1.0, 1.0, 1.0, -1.0};
    Mat4r out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) at(out, i, j) = sign[i] * sign[j] * at(m, 3 - i, 3 - j);
    return out;
}

} // namespace

ConcurrenceResult concurrence_closed_form(const StateParams& params) {
    const double a = params.p * params.p + params.kappa;
    const double d = (1.0 - params.p) * (1.0 - params.p) + params.kappa;
    const double b = params.p * (1.0 - params.p) - params.kappa;
    const double root_ad = std::sqrt(a * d); // NaN when ad < 0: undefined territory

    ConcurrenceResult result;
    if (b >= params.z_mag) {
        result.branch = ConcurrenceBranch::inner;
        result.f_value = 2.0 * (params.z_mag - root_ad);
    } else {
        result.branch = ConcurrenceBranch::outer;
        result.f_value = 2.0 * (b - root_ad);
    }
    result.value = std::isnan(result.f_value) ? result.f_value : std::max(0.0, result.f_value);
    return result;
}

DensityMatrix4 spin_flip(const DensityMatrix4& rho) {
    static constexpr std::array<double, 4> sign{-1.0, 1.0, 1.0, -1.0};
    DensityMatrix4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out(i, j) = sign[i] * sign[j] * std::conj(rho(3 - i, 3 - j));
    return out;
}

Mat4r realify_x_state(const DensityMatrix4& rho) {
    Mat4r out{};
    if (rho.max_abs_imag() <= kStructureTol) {
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) at(out, i, j) = rho(i, j).real();
        return out;
    }

    // Complex input: require all coherence in the (|10>,|01>) slot, then undo
    // its phase with the local unitary diag(e^{-i phi}, 1) (x) 1. Eigenvalues
    // and concurrence are invariant under local unitaries.
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i == j || (i == 1 && j == 2) || (i == 2 && j == 1)) continue;
            if (std::abs(rho(i, j)) > kStructureTol)
                throw std::invalid_argument(
                    "realify_x_state: complex matrix with coherence outside the inner block");
        }
        if (std::abs(rho(i, i).imag()) > kStructureTol)
            throw std::invalid_argument("realify_x_state: complex diagonal entry");
    }
    for (int i = 0; i < 4; ++i) at(out, i, i) = rho(i, i).real();
    const double w = std::abs(rho(1, 2));
    at(out, 1, 2) = w;
    at(out, 2, 1) = w;
    return out;
}

std::array<double, 4> eigenvalues_4x4(const Mat4r& m, double tol) {
    for (double v : m)
        if (!std::isfinite(v)) throw std::invalid_argument("eigenvalues_4x4: non-finite entry");

    Mat4r work = m;
    const double scale = std::max(frobenius_norm(work), 1e-300);
    balance(work);
    hessenberg(work);
    auto ev = qr_eigenvalues(work, scale);

    std::sort(ev.begin(), ev.end(), std::greater<double>());
    for (double& v : ev) {
        if (v < -tol)
            throw std::domain_error("eigenvalues_4x4: eigenvalue below -tol; "
                                    "input spectrum is not nonnegative");
        if (v < 0.0) v = 0.0;
    }
    return ev;
}

double concurrence_wootters(const DensityMatrix4& rho) {
    if (rho.max_hermiticity_error() > kDensityTol)
        throw std::invalid_argument("concurrence_wootters: matrix is not Hermitian");
    if (std::abs(rho.trace() - complexd{1.0, 0.0}) > kDensityTol)
        throw std::invalid_argument("concurrence_wootters: trace is not 1");

    const Mat4r real_rho = realify_x_state(rho);

    // PSD gate on the state itself (real symmetric after realification).
    const auto state_eigs = eigenvalues_4x4(real_rho, kDensityTol);
    (void)state_eigs; // eigenvalues_4x4 throws if any eigenvalue < -kDensityTol

    const Mat4r product = multiply(real_rho, spin_flip_real(real_rho));
    const auto ev = eigenvalues_4x4(product, kDensityTol);
    const double c = std::sqrt(ev[0]) - std::sqrt(ev[1]) - std::sqrt(ev[2]) - std::sqrt(ev[3]);
    return std::max(0.0, c);
}

} // namespace tsx

// Copyright 2026 The belltensor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "belltensor/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "belltensor/error.hpp"

namespace belltensor {

HermitianMatrix::HermitianMatrix(const CMatrix &m, double tol) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        std::ostringstream ss;
        ss << "Hermitian matrix must be square with dim >= 1, got " << m.rows() << "x" << m.cols();
        throw ShapeError(ss.str());
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double skew = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (!(skew <= 2.0 * tol * scale)) {
        std::ostringstream ss;
        ss << "matrix is not Hermitian: max |H - H*| = " << skew;
        throw ValidationError(ss.str());
    }
    m_ = (m + m.adjoint()) * 0.5;
}

HermitianMatrix HermitianMatrix::symmetrized(const CMatrix &m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw ShapeError("Hermitian matrix must be square with dim >= 1");
    }
    return HermitianMatrix(Unchecked{}, (m + m.adjoint()) * 0.5);
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index dim) {
    return HermitianMatrix(Unchecked{}, CMatrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
    return HermitianMatrix(Unchecked{}, CMatrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::from_real(const RMatrix &m) {
    return HermitianMatrix(m.cast<Complex>());
}

HermitianMatrix &HermitianMatrix::operator+=(const HermitianMatrix &o) {
    if (o.dim() != dim()) throw ShapeError("dimension mismatch in Hermitian sum");
    m_ += o.m_;
    return *this;
}

HermitianMatrix &HermitianMatrix::operator-=(const HermitianMatrix &o) {
    if (o.dim() != dim()) throw ShapeError("dimension mismatch in Hermitian difference");
    m_ -= o.m_;
    return *this;
}

HermitianMatrix &HermitianMatrix::operator*=(double s) {
    m_ *= s;
    return *this;
}

namespace {

// One two-sided Jacobi rotation zeroing a(p, q). The 2x2 unitary is
// diag(1, conj(phase)) followed by the real rotation [[c, s], [-s, c]].
void rotate(CMatrix &a, CMatrix &v, Eigen::Index p, Eigen::Index q) {
    const double apq = std::abs(a(p, q));
    if (apq == 0.0) return;
    const Complex phase = a(p, q) / apq;
    const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * apq);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const Complex j00 = c;
    const Complex j01 = s;
    const Complex j10 = -s * std::conj(phase);
    const Complex j11 = c * std::conj(phase);

    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * j00 + akq * j10;
        a(k, q) = akp * j01 + akq * j11;
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = std::conj(j00) * apk + std::conj(j10) * aqk;
        a(q, k) = std::conj(j01) * apk + std::conj(j11) * aqk;
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = vkp * j00 + vkq * j10;
        v(k, q) = vkp * j01 + vkq * j11;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

double off_diagonal_norm2(const CMatrix &a) {
    double off = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (i != j) off += std::norm(a(i, j));
        }
    }
    return off;
}

HermitianMatrix spectral_map(const Eigensystem &es, auto &&f) {
    const Eigen::Index n = es.values.size();
    RVector mapped(n);
    for (Eigen::Index i = 0; i < n; ++i) mapped(i) = f(es.values(i));
    return HermitianMatrix::symmetrized(es.vectors * mapped.cast<Complex>().asDiagonal() * es.vectors.adjoint());
}

}  // namespace

Eigensystem hermitian_eig(const HermitianMatrix &h) {
    const Eigen::Index n = h.dim();
    CMatrix a = h.matrix();
    CMatrix v = CMatrix::Identity(n, n);

    const double total = a.squaredNorm();
    bool converged = false;
    for (int sweep = 0; sweep <= kJacobiMaxSweeps; ++sweep) {
        const double off = off_diagonal_norm2(a);
        if (off <= 1e-32 * total || off == 0.0) {
            converged = true;
            break;
        }
        if (sweep == kJacobiMaxSweeps) break;
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
        }
    }
    if (!converged) {
        std::ostringstream ss;
        ss << "Jacobi eigensolver did not converge in " << kJacobiMaxSweeps << " sweeps (dim " << n << ")";
        throw ConvergenceError(ss.str());
    }

    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() > a(j, j).real(); });
    Eigensystem es{RVector(n), CMatrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        es.values(k) = a(order[k], order[k]).real();
        es.vectors.col(k) = v.col(order[k]);
    }
    return es;
}

RVector hermitian_eigenvalues(const HermitianMatrix &h) { return hermitian_eig(h).values; }

HermitianMatrix matrix_abs(const HermitianMatrix &h) {
    return spectral_map(hermitian_eig(h), [](double x) {
        const double ax = std::abs(x);
        return ax < kPsdClamp ? 0.0 : ax;
    });
}

HermitianMatrix matrix_sign(const HermitianMatrix &h) {
    return spectral_map(hermitian_eig(h), [](double x) { return x >= 0.0 ? 1.0 : -1.0; });
}

double lambda_max(const HermitianMatrix &h) { return hermitian_eigenvalues(h)(0); }

double lambda_min(const HermitianMatrix &h) {
    const RVector ev = hermitian_eigenvalues(h);
    return ev(ev.size() - 1);
}

double operator_norm(const HermitianMatrix &h) {
    const RVector ev = hermitian_eigenvalues(h);
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

double trace_norm(const HermitianMatrix &h) { return hermitian_eigenvalues(h).cwiseAbs().sum(); }

bool is_psd(const HermitianMatrix &h, double slack) { return lambda_min(h) >= -slack; }

namespace {

struct LuResult {
    RMatrix lu;
    std::vector<Eigen::Index> perm;
    double det;
};

LuResult lu_partial_pivot(const RMatrix &m) {
    const Eigen::Index n = m.rows();
    LuResult r{m, std::vector<Eigen::Index>(static_cast<size_t>(n)), 1.0};
    std::iota(r.perm.begin(), r.perm.end(), Eigen::Index{0});
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index piv = k;
        for (Eigen::Index i = k + 1; i < n; ++i) {
            if (std::abs(r.lu(i, k)) > std::abs(r.lu(piv, k))) piv = i;
        }
        if (piv != k) {
            r.lu.row(k).swap(r.lu.row(piv));
            std::swap(r.perm[k], r.perm[piv]);
            r.det = -r.det;
        }
        const double pivot = r.lu(k, k);
        r.det *= pivot;
        if (pivot == 0.0) continue;
        for (Eigen::Index i = k + 1; i < n; ++i) {
            const double f = r.lu(i, k) / pivot;
            r.lu(i, k) = f;
            for (Eigen::Index j = k + 1; j < n; ++j) r.lu(i, j) -= f * r.lu(k, j);
        }
    }
    return r;
}

double singularity_threshold(const RMatrix &m) {
    const double maxabs = m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
    return 1e-12 * std::pow(maxabs, static_cast<double>(m.rows()));
}

}  // namespace

bool is_invertible(const RMatrix &m) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    const auto lu = lu_partial_pivot(m);
    const double thr = singularity_threshold(m);
    return thr > 0.0 && std::abs(lu.det) >= thr;
}

RMatrix real_inverse(const RMatrix &m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream ss;
        ss << "cannot invert a " << m.rows() << "x" << m.cols() << " matrix";
        throw ShapeError(ss.str());
    }
    const Eigen::Index n = m.rows();
    const auto lu = lu_partial_pivot(m);
    const double thr = singularity_threshold(m);
    if (!(thr > 0.0 && std::abs(lu.det) >= thr)) {
        std::ostringstream ss;
        ss << "matrix is singular or near-singular: |det| ~ " << std::abs(lu.det);
        throw SingularMatrixError(ss.str(), std::abs(lu.det));
    }
    RMatrix inv(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
        RVector x(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            double s = lu.perm[i] == col ? 1.0 : 0.0;
            for (Eigen::Index j = 0; j < i; ++j) s -= lu.lu(i, j) * x(j);
            x(i) = s;
        }
        for (Eigen::Index i = n - 1; i >= 0; --i) {
            double s = x(i);
            for (Eigen::Index j = i + 1; j < n; ++j) s -= lu.lu(i, j) * x(j);
            x(i) = s / lu.lu(i, i);
        }
        inv.col(col) = x;
    }
    return inv;
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace belltensor

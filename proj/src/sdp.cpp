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

#include "belltensor/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "belltensor/error.hpp"

namespace belltensor {

const char *to_string(SdpStatus s) {
    switch (s) {
        case SdpStatus::Optimal:
            return "optimal";
        case SdpStatus::Infeasible:
            return "infeasible";
        case SdpStatus::Unbounded:
            return "unbounded";
        case SdpStatus::MaxIterations:
            return "max-iterations";
        case SdpStatus::NumericalFailure:
            return "numerical-failure";
    }
    return "unknown";
}

std::vector<CMatrix> hermitian_basis(Eigen::Index d) {
    std::vector<CMatrix> basis;
    basis.reserve(static_cast<size_t>(d * d));
    const double r = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < d; ++i) {
        CMatrix e = CMatrix::Zero(d, d);
        e(i, i) = 1.0;
        basis.push_back(std::move(e));
    }
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i + 1; j < d; ++j) {
            CMatrix re = CMatrix::Zero(d, d);
            re(i, j) = r;
            re(j, i) = r;
            basis.push_back(std::move(re));
            CMatrix im = CMatrix::Zero(d, d);
            im(i, j) = Complex(0.0, r);
            im(j, i) = Complex(0.0, -r);
            basis.push_back(std::move(im));
        }
    }
    return basis;
}

namespace {

double inner(const CMatrix &a, const CMatrix &x) { return a.transpose().cwiseProduct(x).sum().real(); }

}  // namespace

std::size_t SdpProblem::add_block(std::string label, Eigen::Index dim) {
    if (dim < 1) throw ShapeError("SDP block dimension must be positive");
    blocks_.push_back({std::move(label), dim});
    objective_.push_back(CMatrix::Zero(dim, dim));
    return blocks_.size() - 1;
}

void SdpProblem::add_objective(std::size_t block, const CMatrix &c) {
    if (block >= blocks_.size()) throw ShapeError("objective refers to an unknown block");
    if (c.rows() != blocks_[block].dim || c.cols() != blocks_[block].dim) {
        throw ShapeError("objective coefficient does not match block '" + blocks_[block].label + "'");
    }
    objective_[block] += c;
}

void SdpProblem::add_constraint(std::vector<SdpTerm> terms, double rhs) {
    for (const auto &t : terms) {
        if (t.block >= blocks_.size()) throw ShapeError("constraint refers to an unknown block");
        if (t.coefficient.rows() != blocks_[t.block].dim || t.coefficient.cols() != blocks_[t.block].dim) {
            throw ShapeError("constraint coefficient does not match block '" + blocks_[t.block].label + "'");
        }
    }
    constraints_.push_back({std::move(terms), rhs});
}

void SdpProblem::add_matrix_equality(const std::vector<MatrixTerm> &terms, const CMatrix &rhs) {
    if (rhs.rows() != rhs.cols()) throw ShapeError("matrix equality needs a square right-hand side");
    const Eigen::Index d = rhs.rows();
    for (const auto &t : terms) {
        if (t.block >= blocks_.size()) throw ShapeError("matrix equality refers to an unknown block");
        const Eigen::Index bd = blocks_[t.block].dim;
        if (t.embed.size() == 0 ? bd != d : (bd != 1 || t.embed.rows() != d || t.embed.cols() != d)) {
            throw ShapeError("matrix equality term does not fit block '" + blocks_[t.block].label + "'");
        }
    }
    for (const auto &e : hermitian_basis(d)) {
        std::vector<SdpTerm> row;
        row.reserve(terms.size());
        for (const auto &t : terms) {
            if (t.embed.size() == 0) {
                row.push_back({t.block, t.scale * e});
            } else {
                row.push_back({t.block, CMatrix::Constant(1, 1, t.scale * inner(e, t.embed))});
            }
        }
        constraints_.push_back({std::move(row), inner(e, rhs)});
    }
}

void SdpProblem::validate() const {
    if (blocks_.empty()) throw ValidationError("SDP problem has no blocks");
    auto check = [](const CMatrix &m, const std::string &what) {
        const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
            throw ValidationError(what + " is not Hermitian");
        }
    };
    for (size_t b = 0; b < blocks_.size(); ++b) check(objective_[b], "objective of block '" + blocks_[b].label + "'");
    for (size_t i = 0; i < constraints_.size(); ++i) {
        for (const auto &t : constraints_[i].terms) {
            check(t.coefficient, "coefficient of constraint " + std::to_string(i));
        }
    }
}

namespace {

struct Entry {
    std::size_t row;
    CMatrix a;
};

// Standard-form data with the sense folded into C (always minimize).
struct Compiled {
    std::vector<Eigen::Index> dims;
    std::vector<CMatrix> c;
    RVector b;
    std::vector<std::vector<Entry>> by_block;
    Eigen::Index total_dim = 0;

    RVector apply(const std::vector<CMatrix> &x) const {
        RVector out = RVector::Zero(b.size());
        for (size_t k = 0; k < by_block.size(); ++k) {
            for (const auto &e : by_block[k]) out(static_cast<Eigen::Index>(e.row)) += inner(e.a, x[k]);
        }
        return out;
    }

    std::vector<CMatrix> adjoint(const RVector &y) const {
        std::vector<CMatrix> out;
        out.reserve(dims.size());
        for (size_t k = 0; k < dims.size(); ++k) {
            CMatrix s = CMatrix::Zero(dims[k], dims[k]);
            for (const auto &e : by_block[k]) s += y(static_cast<Eigen::Index>(e.row)) * e.a;
            out.push_back(std::move(s));
        }
        return out;
    }
};

Compiled compile(const SdpProblem &p) {
    Compiled c;
    const double sign = p.sense() == Sense::Maximize ? -1.0 : 1.0;
    for (size_t k = 0; k < p.blocks().size(); ++k) {
        c.dims.push_back(p.blocks()[k].dim);
        c.total_dim += p.blocks()[k].dim;
        c.c.push_back(sign * p.objective()[k]);
    }
    c.by_block.resize(c.dims.size());
    c.b.resize(static_cast<Eigen::Index>(p.constraints().size()));
    for (size_t i = 0; i < p.constraints().size(); ++i) {
        const auto &con = p.constraints()[i];
        c.b(static_cast<Eigen::Index>(i)) = con.rhs;
        for (const auto &t : con.terms) {
            auto &lst = c.by_block[t.block];
            if (!lst.empty() && lst.back().row == i) {
                lst.back().a += t.coefficient;
            } else {
                lst.push_back({i, t.coefficient});
            }
        }
    }
    return c;
}

double frob(const std::vector<CMatrix> &blocks) {
    double s = 0.0;
    for (const auto &m : blocks) s += m.squaredNorm();
    return std::sqrt(s);
}

double inner(const std::vector<CMatrix> &a, const std::vector<CMatrix> &b) {
    double s = 0.0;
    for (size_t k = 0; k < a.size(); ++k) s += inner(a[k], b[k]);
    return s;
}

CMatrix herm(const CMatrix &m) { return (m + m.adjoint()) * 0.5; }

// Largest alpha with x + alpha * dx ⪰ 0 (infinity when dx ⪰ 0).
double max_step(const CMatrix &x, const CMatrix &dx) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (x.rows() == 1) {
        const double d = dx(0, 0).real();
        return d < 0.0 ? -x(0, 0).real() / d : inf;
    }
    Eigen::LLT<CMatrix> llt(x);
    if (llt.info() != Eigen::Success) return 0.0;
    const CMatrix half = llt.matrixL().solve(dx);
    const CMatrix w = llt.matrixL().solve(half.adjoint());
    const double lmin = lambda_min(HermitianMatrix::symmetrized(w));
    return lmin < 0.0 ? -1.0 / lmin : inf;
}

struct Iterate {
    std::vector<CMatrix> x;
    std::vector<CMatrix> z;
    RVector y;
};

struct Direction {
    std::vector<CMatrix> dx;
    std::vector<CMatrix> dz;
    RVector dy;
};

class Solver {
   public:
    Solver(const Compiled &c, const SdpOptions &o) : c_(c), opt_(o) {}

    SdpSolution run();

   private:
    bool factor_schur(const Iterate &it, const std::vector<CMatrix> &zinv);
    Direction direction(const Iterate &it, const std::vector<CMatrix> &zinv, const RVector &rp,
                        const std::vector<CMatrix> &rd, const std::vector<CMatrix> &rc) const;

    const Compiled &c_;
    SdpOptions opt_;
    Eigen::LLT<RMatrix> schur_;
};

bool Solver::factor_schur(const Iterate &it, const std::vector<CMatrix> &zinv) {
    const Eigen::Index m = c_.b.size();
    RMatrix schur = RMatrix::Zero(m, m);
    for (size_t k = 0; k < c_.dims.size(); ++k) {
        const auto &entries = c_.by_block[k];
        for (const auto &ej : entries) {
            const CMatrix g = it.x[k] * ej.a * zinv[k];
            const auto j = static_cast<Eigen::Index>(ej.row);
            for (const auto &ei : entries) {
                schur(static_cast<Eigen::Index>(ei.row), j) += inner(ei.a, g);
            }
        }
    }
    schur = (schur + schur.transpose()) * 0.5;
    schur_.compute(schur);
    if (schur_.info() == Eigen::Success) return true;
    const double reg = 1e-14 * std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
    schur.diagonal().array() += reg;
    schur_.compute(schur);
    return schur_.info() == Eigen::Success;
}

// HKM direction: ΔX = Rc − sym(X ΔZ Z⁻¹), ΔZ = Rd − A*(Δy),
// with Δy from M Δy = rp − A(Rc) + A(X Rd Z⁻¹).
Direction Solver::direction(const Iterate &it, const std::vector<CMatrix> &zinv, const RVector &rp,
                            const std::vector<CMatrix> &rd, const std::vector<CMatrix> &rc) const {
    const size_t nb = c_.dims.size();
    std::vector<CMatrix> xrdz(nb);
    for (size_t k = 0; k < nb; ++k) xrdz[k] = it.x[k] * rd[k] * zinv[k];
    const RVector rhs = rp - c_.apply(rc) + c_.apply(xrdz);
    Direction d;
    d.dy = schur_.solve(rhs);
    const auto aty = c_.adjoint(d.dy);
    d.dz.resize(nb);
    d.dx.resize(nb);
    for (size_t k = 0; k < nb; ++k) {
        d.dz[k] = rd[k] - aty[k];
        d.dx[k] = rc[k] - herm(it.x[k] * d.dz[k] * zinv[k]);
    }
    return d;
}

SdpSolution Solver::run() {
    const size_t nb = c_.dims.size();
    const Eigen::Index m = c_.b.size();
    const double norm_b = c_.b.norm();
    const double norm_c = frob(c_.c);
    const double n_total = static_cast<double>(c_.total_dim);

    Iterate it;
    it.y = RVector::Zero(m);
    for (size_t k = 0; k < nb; ++k) {
        const double nk = static_cast<double>(c_.dims[k]);
        double xs = std::max(10.0, std::sqrt(nk));
        double zs = std::max({10.0, std::sqrt(nk), c_.c[k].norm()});
        for (const auto &e : c_.by_block[k]) {
            const double an = e.a.norm();
            xs = std::max(xs, nk * (1.0 + std::abs(c_.b(static_cast<Eigen::Index>(e.row)))) / (1.0 + an));
            zs = std::max(zs, an);
        }
        it.x.push_back(xs * CMatrix::Identity(c_.dims[k], c_.dims[k]));
        it.z.push_back(zs * CMatrix::Identity(c_.dims[k], c_.dims[k]));
    }

    SdpSolution best;
    double best_merit = std::numeric_limits<double>::infinity();
    SdpStatus terminal = SdpStatus::MaxIterations;
    int stall = 0;
    int iter = 0;

    auto record = [&](const SdpResiduals &res, double pobj, double dobj, double merit) {
        best.block_values = it.x;
        best.dual_slacks = it.z;
        best.multipliers = it.y;
        best.residuals = res;
        best.primal_value = pobj;
        best.dual_value = dobj;
        best.iterations = iter;
        best_merit = merit;
    };

    for (;; ++iter) {
        const RVector rp = c_.b - c_.apply(it.x);
        const auto aty = c_.adjoint(it.y);
        std::vector<CMatrix> rd(nb);
        for (size_t k = 0; k < nb; ++k) rd[k] = c_.c[k] - it.z[k] - aty[k];
        const double pobj = inner(c_.c, it.x);
        const double dobj = c_.b.dot(it.y);
        const double xz = inner(it.x, it.z);
        const double mu = xz / n_total;

        SdpResiduals res;
        res.primal_infeasibility = rp.norm() / (1.0 + norm_b);
        res.dual_infeasibility = frob(rd) / (1.0 + norm_c);
        const double denom = 1.0 + std::abs(pobj) + std::abs(dobj);
        res.gap = std::max(std::abs(pobj - dobj), std::abs(xz)) / denom;
        const double merit = std::max({res.primal_infeasibility, res.dual_infeasibility, res.gap});

        if (merit < 0.9 * best_merit) {
            stall = 0;
        } else {
            ++stall;
        }
        if (merit < best_merit) record(res, pobj, dobj, merit);
        if (merit <= opt_.target_tolerance) break;
        if (iter >= opt_.max_iterations || stall >= 25) break;

        // Improving rays: a huge dual objective with vanishing −A*(y)/bᵀy
        // certifies primal infeasibility; the mirror case certifies
        // unboundedness.
        if (it.y.norm() > 1e8 * (1.0 + norm_c) && dobj > 0.0) {
            const auto ray = c_.adjoint(it.y / dobj);
            bool ok = true;
            for (size_t k = 0; k < nb && ok; ++k) {
                ok = lambda_max(HermitianMatrix::symmetrized(ray[k])) <= 1e-6 * std::max(1.0, ray[k].norm());
            }
            if (ok) {
                terminal = SdpStatus::Infeasible;
                break;
            }
        }
        if (frob(it.x) > 1e8 * (1.0 + norm_b) && pobj < 0.0) {
            std::vector<CMatrix> ray(nb);
            for (size_t k = 0; k < nb; ++k) ray[k] = it.x[k] / (-pobj);
            if (c_.apply(ray).norm() <= 1e-6) {
                terminal = SdpStatus::Unbounded;
                break;
            }
        }

        std::vector<CMatrix> zinv(nb);
        bool ok = true;
        for (size_t k = 0; k < nb && ok; ++k) {
            Eigen::LLT<CMatrix> llt(it.z[k]);
            ok = llt.info() == Eigen::Success;
            if (ok) zinv[k] = herm(llt.solve(CMatrix::Identity(c_.dims[k], c_.dims[k])));
        }
        if (!ok || !factor_schur(it, zinv)) {
            terminal = SdpStatus::NumericalFailure;
            break;
        }

        std::vector<CMatrix> rc(nb);
        for (size_t k = 0; k < nb; ++k) rc[k] = -it.x[k];
        const Direction pred = direction(it, zinv, rp, rd, rc);
        double ap = 1.0;
        double ad = 1.0;
        for (size_t k = 0; k < nb; ++k) {
            ap = std::min(ap, max_step(it.x[k], pred.dx[k]));
            ad = std::min(ad, max_step(it.z[k], pred.dz[k]));
        }
        double xz_aff = 0.0;
        for (size_t k = 0; k < nb; ++k) {
            xz_aff += inner(it.x[k] + ap * pred.dx[k], it.z[k] + ad * pred.dz[k]);
        }
        const double sigma = std::clamp(std::pow(std::max(xz_aff, 0.0) / std::max(xz, 1e-300), 3.0), 0.0, 1.0);

        for (size_t k = 0; k < nb; ++k) {
            rc[k] = sigma * mu * zinv[k] - it.x[k] - herm(pred.dx[k] * pred.dz[k] * zinv[k]);
        }
        const Direction corr = direction(it, zinv, rp, rd, rc);
        ap = std::numeric_limits<double>::infinity();
        ad = std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < nb; ++k) {
            ap = std::min(ap, max_step(it.x[k], corr.dx[k]));
            ad = std::min(ad, max_step(it.z[k], corr.dz[k]));
        }
        ap = std::min(1.0, opt_.step_fraction * ap);
        ad = std::min(1.0, opt_.step_fraction * ad);
        if (ap < 1e-14 && ad < 1e-14) break;

        for (size_t k = 0; k < nb; ++k) {
            it.x[k] = herm(it.x[k] + ap * corr.dx[k]);
            it.z[k] = herm(it.z[k] + ad * corr.dz[k]);
        }
        it.y += ad * corr.dy;
    }

    if (best_merit <= opt_.accept_tolerance) {
        best.status = SdpStatus::Optimal;
    } else if (terminal == SdpStatus::Infeasible || terminal == SdpStatus::Unbounded ||
               terminal == SdpStatus::NumericalFailure) {
        best.status = terminal;
    } else {
        best.status = SdpStatus::MaxIterations;
    }
    best.iterations = iter;
    return best;
}

}  // namespace

SdpSolution solve(const SdpProblem &problem, const SdpOptions &options) {
    problem.validate();
    const Compiled c = compile(problem);
    SdpSolution sol = Solver(c, options).run();
    if (problem.sense() == Sense::Maximize) {
        sol.primal_value = -sol.primal_value;
        sol.dual_value = -sol.dual_value;
        sol.multipliers = -sol.multipliers;
    }
    return sol;
}

SdpSolution solve_or_throw(const SdpProblem &problem, const SdpOptions &options) {
    SdpSolution sol = solve(problem, options);
    if (!sol.optimal()) {
        std::ostringstream ss;
        ss << "SDP solver ended with status " << to_string(sol.status) << " after " << sol.iterations
           << " iterations (primal residual " << sol.residuals.primal_infeasibility << ", dual residual "
           << sol.residuals.dual_infeasibility << ", gap " << sol.residuals.gap << ")";
        throw SolverError(ss.str(), sol.residuals.primal_infeasibility, sol.residuals.dual_infeasibility,
                          sol.residuals.gap);
    }
    return sol;
}

}  // namespace belltensor

#pragma once

#include <Eigen/Sparse>
#include <memory>

#include "splash/fields.hpp"

namespace splash {

/// Dirichlet solver for  Q^2 Lap(psi) = rhs,  psi = bc on the boundary ring.
/// The factorization is computed once per domain and reused.
class PoissonSolver {
public:
    explicit PoissonSolver(const DiscreteDomain& dom);

    /// rhs is read at interior nodes, bc at boundary ring index i in [0, nt).
    Field solve(const Field& rhs, const Eigen::VectorXd& bc) const;
    /// Residual of the discrete operator for a candidate solution.
    double residual(const Field& psi, const Field& rhs, const Eigen::VectorXd& bc) const;

    const DiscreteDomain& domain() const { return dom_; }

private:
    const DiscreteDomain& dom_;
    Eigen::SparseMatrix<double> op_;
    std::unique_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>>> lu_;
};

/// Pointwise Tr(grad(v) A) with the scheme's discrete gradient.
Field a_divergence(const DiscreteDomain& dom, const Field& v);

/// Plain divergence (frame-free).
Field divergence(const DiscreteDomain& dom, const Field& v);

/// A^T grad(q) as a vector field.
Field a_transpose_gradient(const DiscreteDomain& dom, const Field& q);

/// Stream-type field J A^T grad(psi): its A-divergence vanishes identically.
Field a_perp_gradient(const DiscreteDomain& dom, const Field& psi);

/// Leray-type projection R v = v - A^T grad(psi), Q^2 Lap(psi) = Tr(grad v A),
/// psi = 0 on the boundary.
Field project_R(const PoissonSolver& poisson, const Field& v);

/// Corrector pressure: -Q^2 Lap(q) = Tr(grad(u0) A grad(u0) A) with the
/// Dirichlet datum q |A^-1 n|^2 = A^-1 n . (grad(u0)A + (grad(u0)A)^T) A^-1 n.
Field corrector_pressure(const PoissonSolver& poisson, const Field& u0);

/// Boundary stress (q I - (grad(v)A + (grad(v)A)^T)) A^{-1} n per boundary
/// node; returns 2*nt values [sx; sy].
Eigen::VectorXd boundary_stress(const DiscreteDomain& dom, const Field& v, const Field& q);

/// Tangential and normal parts of a boundary vector field w.r.t. the
/// direction m = A^{-1} n: tang = h . m_perp, norm = h . m.
void split_boundary_stress(const DiscreteDomain& dom, const Eigen::VectorXd& h,
                           Eigen::VectorXd& tangential, Eigen::VectorXd& normal);

}  // namespace splash

#pragma once

#include <array>
#include <string>
#include <vector>

#include "bosonstar/radial.hpp"

namespace bosonstar {

/* J(u) = ||(-Lap)^{1/4} u||^2 ||u||^2 / (D(u)/2), the dilation- and
 * scale-invariant quotient whose infimum over nonzero u is the critical
 * coupling a*. */
double gn_quotient(const RadialFunction& u);

struct GnOptions {
    int max_iter = 40000;
    double tol_grad = 1e-8;    // projected-gradient norm
    double tol_quotient = 1e-12;  // relative change of J between accepted steps
    double initial_step = 1.0;
    int multistart = 3;        // Gaussian, exponential, plateau bump
    bool precondition = true;  // H^{1/2}-metric descent direction
};

struct GnSolution {
    RadialFunction q;                 // normalized optimizer
    double a_star = 0.0;              // J at convergence
    double residual = 0.0;            // relative Euler-Lagrange defect
    std::array<double, 3> identities{};  // kinetic, mass, (a*/2) D
    double multistart_spread = 0.0;   // max L2 distance among branch optimizers
    bool converged = false;
    int iterations = 0;
    double grad_norm = 0.0;
    std::vector<double> branch_quotients;
};

GnSolution solve_gn(const GridPtr& grid, const GnOptions& opts = {});

/* Two-parameter rescale u_{mu,nu}(x) = nu u(mu x) with
 * nu^2 mu^{-3} ||u||^2 = 1 and nu^2 mu^{-2} ||(-Lap)^{1/4} u||^2 = 1.
 * Output has unit mass and unit kinetic form. */
RadialFunction normalize_optimizer(const RadialFunction& u);

/* || sqrt(-Lap) Q + Q - a* (|.|^{-1} * Q^2) Q ||_2 / ||Q||_{H^{1/2}} for a
 * Q normalized to unit mass and unit kinetic form. */
double el_residual(const RadialFunction& q, double a_star);

struct DecayReport {
    double sup_r4_q = 0.0;       // sup of r^4 Q(r) over [R/2, 0.95 R]
    double sup_tail_newton = 0.0;  // sup of (1+r) Phi[Q^2](r) over the same window
    bool monotone_tail = false;
};

DecayReport decay_report(const RadialFunction& q);

}  // namespace bosonstar

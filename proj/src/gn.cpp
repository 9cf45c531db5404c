#include "bosonstar/gn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bosonstar {

namespace {

struct QuotientParts {
    double kinetic;      // T = <u, sqrt(-Lap) u>
    double mass;         // M = ||u||^2
    double interaction;  // D(u)
    double quotient;     // 2 T M / D
};

QuotientParts eval_quotient(const RadialFunction& u) {
    QuotientParts p{};
    p.kinetic = kinetic_form(u, 0.0);
    p.mass = mass_norm2(u);
    p.interaction = coulomb_energy(u);
    if (!(p.interaction > 0.0)) {
        throw std::invalid_argument("gn_quotient: zero interaction energy");
    }
    p.quotient = 2.0 * p.kinetic * p.mass / p.interaction;
    return p;
}

RadialFunction quotient_gradient(const RadialFunction& u, const QuotientParts& p) {
    // grad J = (4M/D) [ sqrt(-Lap) u + (T/M) u - (J/M) Phi[u^2] u ]
    RadialFunction rho(u.grid);
    for (int j = 0; j < u.size(); ++j) rho.values[j] = u.values[j] * u.values[j];
    RadialFunction phi = newton_potential(rho);
    RadialFunction grad = apply_symbol(u, [](double k) { return k; });
    const double c0 = p.kinetic / p.mass;
    const double c1 = p.quotient / p.mass;
    const double pref = 4.0 * p.mass / p.interaction;
    for (int j = 0; j < u.size(); ++j) {
        grad.values[j] = pref * (grad.values[j] + c0 * u.values[j] -
                                 c1 * phi.values[j] * u.values[j]);
    }
    return grad;
}

void project_tangent(RadialFunction& g, const RadialFunction& u, double mass) {
    const double c = inner(g, u) / mass;
    for (int j = 0; j < g.size(); ++j) g.values[j] -= c * u.values[j];
}

void renormalize(RadialFunction& u) {
    const double m = mass_norm2(u);
    const double s = 1.0 / std::sqrt(m);
    for (double& v : u.values) v *= s;
}

struct BranchResult {
    RadialFunction u;
    QuotientParts parts{};
    bool converged = false;
    int iterations = 0;
    double grad_norm = 0.0;
};

BranchResult descend(RadialFunction u, const GnOptions& opts) {
    renormalize(u);
    QuotientParts parts = eval_quotient(u);
    BranchResult res{u, parts, false, 0, 0.0};

    for (int it = 0; it < opts.max_iter; ++it) {
        RadialFunction grad = quotient_gradient(res.u, res.parts);
        project_tangent(grad, res.u, res.parts.mass);
        const double gnorm = std::sqrt(std::max(0.0, mass_norm2(grad)));
        res.grad_norm = gnorm;

        RadialFunction dir = grad;
        if (opts.precondition) {
            // Descent in the H^{1/2} metric: divide sine coefficients by
            // (k + T/M), which tames the high-momentum stiffness.
            const double shift = std::max(res.parts.kinetic / res.parts.mass, 1e-8);
            dir = apply_symbol(grad, [shift](double k) { return 1.0 / (k + shift); });
        }

        double step = opts.initial_step;
        bool accepted = false;
        QuotientParts trial_parts{};
        RadialFunction trial(res.u.grid);
        while (step > 1e-14) {
            for (int j = 0; j < res.u.size(); ++j) {
                trial.values[j] = std::fabs(res.u.values[j] - step * dir.values[j]);
            }
            renormalize(trial);
            trial_parts = eval_quotient(trial);
            if (trial_parts.quotient < res.parts.quotient) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        res.iterations = it + 1;
        if (!accepted) {
            res.converged = gnorm <= opts.tol_grad;
            break;
        }
        const double rel_change =
            (res.parts.quotient - trial_parts.quotient) / res.parts.quotient;
        res.u = trial;
        res.parts = trial_parts;
        if (rel_change <= opts.tol_quotient && gnorm <= opts.tol_grad) {
            res.converged = true;
            break;
        }
    }
    if (!res.converged) {
        RadialFunction grad = quotient_gradient(res.u, res.parts);
        project_tangent(grad, res.u, res.parts.mass);
        res.grad_norm = std::sqrt(std::max(0.0, mass_norm2(grad)));
        res.converged = res.grad_norm <= opts.tol_grad;
    }
    return res;
}

RadialFunction initial_profile(const GridPtr& grid, int which) {
    RadialFunction u(grid);
    for (int j = 0; j < grid->size(); ++j) {
        const double r = grid->node(j);
        switch (which) {
            case 0: u.values[j] = std::exp(-0.5 * r * r); break;
            case 1: u.values[j] = std::exp(-r); break;
            default: u.values[j] = 1.0 / (1.0 + std::pow(r / 3.0, 8.0)); break;
        }
    }
    return u;
}

}  // namespace

double gn_quotient(const RadialFunction& u) { return eval_quotient(u).quotient; }

RadialFunction normalize_optimizer(const RadialFunction& u) {
    const double mass = mass_norm2(u);
    const double kin = kinetic_form(u, 0.0);
    if (!(mass > 0.0) || !(kin > 0.0)) {
        throw std::invalid_argument("normalize_optimizer: zero input");
    }
    // nu^2 mu^{-3} M = 1, nu^2 mu^{-2} T = 1  =>  mu = M/T, nu = M/T^{3/2}.
    const double mu = mass / kin;
    const double nu = mass / std::pow(kin, 1.5);
    const auto& g = *u.grid;
    // Resample u(mu r) on the same grid; mu r may exceed R, where the
    // profile is taken as zero (the tail must have decayed for the rescale
    // to be meaningful).
    RadialFunction out(u.grid);
    const double h = g.spacing();
    const int n = g.size();
    for (int j = 0; j < n; ++j) {
        const double x = mu * g.node(j) / h;  // in node index units (1-based)
        const int i0 = static_cast<int>(std::floor(x));
        const double t = x - i0;
        double left = 0.0, right = 0.0;
        if (i0 >= 1 && i0 <= n) left = u.values[i0 - 1];
        if (i0 + 1 >= 1 && i0 + 1 <= n) right = u.values[i0];
        out.values[j] = nu * ((1.0 - t) * left + t * right);
    }
    return out;
}

double el_residual(const RadialFunction& q, double a_star) {
    RadialFunction rho(q.grid);
    for (int j = 0; j < q.size(); ++j) rho.values[j] = q.values[j] * q.values[j];
    RadialFunction phi = newton_potential(rho);
    RadialFunction lhs = apply_symbol(q, [](double k) { return k; });
    for (int j = 0; j < q.size(); ++j) {
        lhs.values[j] += q.values[j] - a_star * phi.values[j] * q.values[j];
    }
    const double h_half = mass_norm2(q) + kinetic_form(q, 0.0);
    return std::sqrt(std::max(0.0, mass_norm2(lhs))) / std::sqrt(h_half);
}

GnSolution solve_gn(const GridPtr& grid, const GnOptions& opts) {
    const int branches = std::max(1, opts.multistart);
    std::vector<BranchResult> results;
    std::vector<RadialFunction> normalized;
    results.reserve(branches);
    for (int b = 0; b < branches; ++b) {
        results.push_back(descend(initial_profile(grid, b), opts));
        normalized.push_back(normalize_optimizer(results.back().u));
    }

    int best = 0;
    for (int b = 1; b < branches; ++b) {
        if (results[b].parts.quotient < results[best].parts.quotient) best = b;
    }

    GnSolution sol;
    sol.q = normalized[best];
    sol.converged = results[best].converged;
    sol.iterations = results[best].iterations;
    sol.grad_norm = results[best].grad_norm;
    for (const auto& r : results) sol.branch_quotients.push_back(r.parts.quotient);

    double spread = 0.0;
    for (int i = 0; i < branches; ++i) {
        for (int j = i + 1; j < branches; ++j) {
            spread = std::max(spread, l2_distance(normalized[i], normalized[j]));
        }
    }
    sol.multistart_spread = spread;

    sol.a_star = gn_quotient(sol.q);
    sol.identities = {kinetic_form(sol.q, 0.0), mass_norm2(sol.q),
                      0.5 * sol.a_star * coulomb_energy(sol.q)};
    sol.residual = el_residual(sol.q, sol.a_star);
    return sol;
}

DecayReport decay_report(const RadialFunction& q) {
    const auto& g = *q.grid;
    const double lo = 0.5 * g.outer_radius();
    const double hi = 0.95 * g.outer_radius();
    DecayReport rep;
    bool monotone = true;
    double prev = std::numeric_limits<double>::infinity();
    RadialFunction rho(q.grid);
    for (int j = 0; j < q.size(); ++j) rho.values[j] = q.values[j] * q.values[j];
    RadialFunction phi = newton_potential(rho);
    for (int j = 0; j < q.size(); ++j) {
        const double r = g.node(j);
        if (r < lo || r > hi) continue;
        const double r4q = r * r * r * r * q.values[j];
        rep.sup_r4_q = std::max(rep.sup_r4_q, r4q);
        rep.sup_tail_newton = std::max(rep.sup_tail_newton, (1.0 + r) * phi.values[j]);
        if (q.values[j] > prev + 1e-10) monotone = false;
        prev = q.values[j];
    }
    rep.monotone_tail = monotone;
    return rep;
}

}  // namespace bosonstar

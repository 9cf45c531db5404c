#include "bosonstar/radial.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bosonstar {

namespace {
constexpr double kFourPi = 4.0 * std::numbers::pi;
}

RadialGrid::RadialGrid(double outer_radius, int interior_nodes)
    : radius_(outer_radius), n_(interior_nodes) {
    if (!(outer_radius > 0.0)) {
        throw std::invalid_argument("RadialGrid: non-positive radius");
    }
    if (interior_nodes < 16) {
        throw std::invalid_argument("RadialGrid: grid too small (n >= 16 required)");
    }
    spacing_ = radius_ / (n_ + 1);
    nodes_.resize(n_);
    momenta_.resize(n_);
    const double dk = std::numbers::pi / radius_;
    for (int j = 0; j < n_; ++j) {
        nodes_[j] = (j + 1) * spacing_;
        momenta_[j] = (j + 1) * dk;
    }
    // Plan once on scratch; FFTW_UNALIGNED lets fftw_execute_r2r run on any
    // caller-provided buffers, which keeps execution thread-safe.
    std::vector<double> scratch(n_);
    plan_ = fftw_plan_r2r_1d(n_, scratch.data(), scratch.data(), FFTW_RODFT00,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan_ == nullptr) {
        throw std::runtime_error("RadialGrid: failed to create DST plan");
    }
}

RadialGrid::~RadialGrid() {
    if (plan_ != nullptr) {
        fftw_destroy_plan(static_cast<fftw_plan>(plan_));
    }
}

void RadialGrid::dst(const double* in, double* out) const {
    fftw_execute_r2r(static_cast<fftw_plan>(plan_), const_cast<double*>(in), out);
}

GridPtr make_grid(double outer_radius, int interior_nodes) {
    return std::make_shared<const RadialGrid>(outer_radius, interior_nodes);
}

RadialFunction::RadialFunction(GridPtr g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid->size()) {
        throw std::invalid_argument("RadialFunction: sample count does not match grid");
    }
}

SpectralCoeffs forward(const RadialFunction& u) {
    const auto& g = *u.grid;
    const int n = g.size();
    std::vector<double> w(n);
    for (int j = 0; j < n; ++j) w[j] = g.node(j) * u.values[j];
    SpectralCoeffs c{u.grid, std::vector<double>(n)};
    g.dst(w.data(), c.coeffs.data());
    const double scale = 1.0 / (n + 1);  // b_k = (2h/R) sum_j w_j sin(...)
    for (double& x : c.coeffs) x *= scale;
    return c;
}

RadialFunction inverse(const SpectralCoeffs& c) {
    const auto& g = *c.grid;
    const int n = g.size();
    RadialFunction u(c.grid);
    std::vector<double> w(n);
    g.dst(c.coeffs.data(), w.data());
    for (int j = 0; j < n; ++j) u.values[j] = 0.5 * w[j] / g.node(j);
    return u;
}

RadialFunction apply_symbol(const RadialFunction& u,
                            const std::function<double(double)>& symbol) {
    SpectralCoeffs c = forward(u);
    const auto& g = *u.grid;
    for (int k = 0; k < g.size(); ++k) {
        const double s = symbol(g.momentum(k));
        if (!std::isfinite(s)) {
            throw std::invalid_argument("apply_symbol: symbol non-finite at grid momentum");
        }
        c.coeffs[k] *= s;
    }
    return inverse(c);
}

double kinetic_form(const RadialFunction& u, double mass) {
    if (mass < 0.0) {
        throw std::invalid_argument("kinetic_form: negative mass");
    }
    const auto& g = *u.grid;
    SpectralCoeffs c = forward(u);
    const double m2 = mass * mass;
    double acc = 0.0;
    for (int k = 0; k < g.size(); ++k) {
        const double kk = g.momentum(k);
        acc += std::sqrt(kk * kk + m2) * c.coeffs[k] * c.coeffs[k];
    }
    return kFourPi * 0.5 * g.outer_radius() * acc;
}

double integral(const RadialFunction& f) {
    const auto& g = *f.grid;
    double acc = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        const double r = g.node(j);
        acc += r * r * f.values[j];
    }
    return kFourPi * g.spacing() * acc;
}

double mass_norm2(const RadialFunction& u) { return inner(u, u); }

double inner(const RadialFunction& u, const RadialFunction& v) {
    const auto& g = *u.grid;
    double acc = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        const double r = g.node(j);
        acc += r * r * u.values[j] * v.values[j];
    }
    return kFourPi * g.spacing() * acc;
}

double radial_moment(const RadialFunction& u, double power) {
    const auto& g = *u.grid;
    double acc = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        const double r = g.node(j);
        acc += std::pow(r, 2.0 + power) * u.values[j] * u.values[j];
    }
    return kFourPi * g.spacing() * acc;
}

RadialFunction newton_potential(const RadialFunction& rho, bool* negative_density) {
    const auto& g = *rho.grid;
    const int n = g.size();
    const double h = g.spacing();
    bool negative = false;

    // inner_j = int_0^{r_j} s^2 rho ds and outer_j = int_{r_j}^R s rho ds,
    // trapezoid with vanishing end contributions; equivalently the discrete
    // kernel sum_l h s_l^2 rho_l / max(r_j, s_l) with the diagonal assigned
    // full inside weight (the two conventions coincide).
    std::vector<double> inner_cum(n), outer_cum(n);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const double r = g.node(j);
        if (rho.values[j] < 0.0) negative = true;
        acc += r * r * rho.values[j];
        inner_cum[j] = acc;
    }
    acc = 0.0;
    for (int j = n - 1; j >= 0; --j) {
        outer_cum[j] = acc;  // strictly above r_j
        acc += g.node(j) * rho.values[j];
    }
    RadialFunction phi(rho.grid);
    for (int j = 0; j < n; ++j) {
        phi.values[j] = kFourPi * h * (inner_cum[j] / g.node(j) + outer_cum[j]);
    }
    if (negative_density != nullptr) *negative_density = negative;
    return phi;
}

double coulomb_energy(const RadialFunction& u) {
    RadialFunction rho(u.grid);
    for (int j = 0; j < u.size(); ++j) rho.values[j] = u.values[j] * u.values[j];
    return coulomb_pair(rho, rho);
}

double coulomb_pair(const RadialFunction& rho_a, const RadialFunction& rho_b) {
    RadialFunction phi = newton_potential(rho_b);
    const auto& g = *rho_a.grid;
    double acc = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        const double r = g.node(j);
        acc += r * r * rho_a.values[j] * phi.values[j];
    }
    return kFourPi * g.spacing() * acc;
}

void save_radial_csv(const RadialFunction& u, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_radial_csv: cannot open " + path);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", u.grid->outer_radius());
    out << "r,value,R=" << buf << ",n=" << u.grid->size() << "\n";
    for (int j = 0; j < u.size(); ++j) {
        char rbuf[64], vbuf[64];
        std::snprintf(rbuf, sizeof(rbuf), "%.17g", u.grid->node(j));
        std::snprintf(vbuf, sizeof(vbuf), "%.17g", u.values[j]);
        out << rbuf << ',' << vbuf << '\n';
    }
}

RadialFunction load_radial_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_radial_csv: cannot open " + path);
    std::string header;
    std::getline(in, header);
    const auto rpos = header.find("R=");
    const auto npos = header.find("n=");
    if (rpos == std::string::npos || npos == std::string::npos) {
        throw std::runtime_error("load_radial_csv: missing grid header in " + path);
    }
    const double radius = std::stod(header.substr(rpos + 2));
    const int n = std::stoi(header.substr(npos + 2));
    RadialFunction u(make_grid(radius, n));
    std::string line;
    int j = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || j >= n) {
            throw std::runtime_error("load_radial_csv: malformed row in " + path);
        }
        u.values[j++] = std::stod(line.substr(comma + 1));
    }
    if (j != n) throw std::runtime_error("load_radial_csv: row count mismatch in " + path);
    return u;
}

RadialFunction operator+(const RadialFunction& a, const RadialFunction& b) {
    RadialFunction out(a.grid);
    for (int j = 0; j < a.size(); ++j) out.values[j] = a.values[j] + b.values[j];
    return out;
}

RadialFunction operator-(const RadialFunction& a, const RadialFunction& b) {
    RadialFunction out(a.grid);
    for (int j = 0; j < a.size(); ++j) out.values[j] = a.values[j] - b.values[j];
    return out;
}

RadialFunction operator*(double s, const RadialFunction& a) {
    RadialFunction out(a.grid);
    for (int j = 0; j < a.size(); ++j) out.values[j] = s * a.values[j];
    return out;
}

double l2_distance(const RadialFunction& a, const RadialFunction& b) {
    return std::sqrt(std::max(0.0, mass_norm2(a - b)));
}

}  // namespace bosonstar

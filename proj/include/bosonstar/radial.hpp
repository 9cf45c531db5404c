#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace bosonstar {

/* Uniform radial grid on (0, R) for functions u(x) = u(|x|) on R^3.
 *
 * Interior nodes r_j = (j+1)*h with h = R/(n+1), j = 0..n-1; the endpoints
 * r = 0 and r = R are excluded.  The half-line reduction w(r) = r*u(r)
 * satisfies Dirichlet conditions w(0) = w(R) = 0, so a type-I discrete sine
 * transform diagonalizes the radial Laplacian exactly: for radial functions
 * the 3D symbol sigma(sqrt(-Laplacian)) acts as multiplication by sigma(k_j)
 * on the sine coefficients of w, with momenta k_j = (j+1)*pi/R.
 */
class RadialGrid {
public:
    RadialGrid(double outer_radius, int interior_nodes);
    ~RadialGrid();

    RadialGrid(const RadialGrid&) = delete;
    RadialGrid& operator=(const RadialGrid&) = delete;

    double outer_radius() const { return radius_; }
    int size() const { return n_; }
    double spacing() const { return spacing_; }
    double node(int j) const { return nodes_[j]; }
    double momentum(int k) const { return momenta_[k]; }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& momenta() const { return momenta_; }

    // Unnormalized DST-I: out_k = 2 * sum_j in_j sin(pi (j+1)(k+1)/(n+1)).
    // Applying it twice multiplies by 2(n+1).  Safe to call concurrently on
    // distinct buffers; in == out is allowed.
    void dst(const double* in, double* out) const;

private:
    double radius_;
    int n_;
    double spacing_;
    std::vector<double> nodes_;
    std::vector<double> momenta_;
    void* plan_ = nullptr;  // fftw_plan, kept opaque here
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(double outer_radius, int interior_nodes);

/* Samples u(r_j) of a radial profile; the associated 3D function is
 * x -> u(|x|). */
struct RadialFunction {
    GridPtr grid;
    std::vector<double> values;

    RadialFunction() = default;
    explicit RadialFunction(GridPtr g) : grid(std::move(g)), values(grid->size(), 0.0) {}
    RadialFunction(GridPtr g, std::vector<double> v);

    int size() const { return static_cast<int>(values.size()); }
    double operator[](int j) const { return values[j]; }
    double& operator[](int j) { return values[j]; }
};

/* Sine-series coefficients of w(r) = r*u(r) at momenta k_j = (j+1)*pi/R. */
struct SpectralCoeffs {
    GridPtr grid;
    std::vector<double> coeffs;
};

SpectralCoeffs forward(const RadialFunction& u);
RadialFunction inverse(const SpectralCoeffs& c);

// sigma(k_j) multiplier applied in sine space; linear in u.  Throws if the
// symbol is non-finite at any grid momentum.
RadialFunction apply_symbol(const RadialFunction& u,
                            const std::function<double(double)>& symbol);

// <u, sqrt(-Laplacian + m^2) u> over R^3, evaluated in sine space.
double kinetic_form(const RadialFunction& u, double mass);

// Quadrature over R^3 with the 4*pi*r^2 weight (trapezoid-consistent).
double integral(const RadialFunction& f);
double mass_norm2(const RadialFunction& u);              // ||u||_{L^2(R^3)}^2
double inner(const RadialFunction& u, const RadialFunction& v);
double radial_moment(const RadialFunction& u, double power);  // int |x|^p |u|^2

/* Newton potential Phi(r) = (4pi/r) int_0^r s^2 rho(s) ds
 *                           + 4pi int_r^R s rho(s) ds,
 * built by cumulative sums in O(n).  Negative densities are accepted; the
 * optional flag reports whether any sample was negative. */
RadialFunction newton_potential(const RadialFunction& rho,
                                bool* negative_density = nullptr);

// D(u) = int |u|^2 Phi[|u|^2]; always >= 0 for real u.
double coulomb_energy(const RadialFunction& u);

// Bilinear extension on densities: int rho_a(x) rho_b(y) / |x-y| dx dy.
double coulomb_pair(const RadialFunction& rho_a, const RadialFunction& rho_b);

// Two-column CSV (r,value); header row names the grid R and n.
void save_radial_csv(const RadialFunction& u, const std::string& path);
RadialFunction load_radial_csv(const std::string& path);

// Linear interpolation onto another grid; constant below the first source
// node, zero beyond the source radius.
RadialFunction resample(const RadialFunction& u, const GridPtr& target);

// Elementwise helpers on a shared grid.
RadialFunction operator+(const RadialFunction& a, const RadialFunction& b);
RadialFunction operator-(const RadialFunction& a, const RadialFunction& b);
RadialFunction operator*(double s, const RadialFunction& a);
double l2_distance(const RadialFunction& a, const RadialFunction& b);

}  // namespace bosonstar

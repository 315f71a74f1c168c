#include "snvstark/field_map.hpp"

#include "snvstark/stark_model.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace snvstark {

namespace {

constexpr double kSnapTol = 1e-9;

void append_uniform(std::vector<double>& v, double from, double to, double h) {
    const int n = std::max(1, static_cast<int>(std::ceil((to - from) / h - 1e-9)));
    for (int i = 1; i <= n; ++i) v.push_back(from + (to - from) * i / n);
}

// Extend v from its last coordinate to `target` with geometrically growing
// spacing, starting from h0 and capped at hmax.
void append_graded(std::vector<double>& v, double target, double h0, double hmax) {
    double h = h0;
    double x = v.back();
    while (x < target - kSnapTol) {
        h = std::min(h * 1.3, hmax);
        x += h;
        if (target - x < 0.45 * h) x = target;
        v.push_back(x);
    }
}

std::vector<double> mirror_axis(const std::vector<double>& half) {
    // half = ascending coords starting at 0
    std::vector<double> out;
    for (auto it = half.rbegin(); it != half.rend(); ++it) out.push_back(-*it);
    out.insert(out.end(), half.begin() + 1, half.end());
    return out;
}

bool in_rect(const DirichletRect& r, double x, double y) {
    return x >= r.x0 - kSnapTol && x <= r.x1 + kSnapTol &&
           y >= r.y0 - kSnapTol && y <= r.y1 + kSnapTol;
}

// Second-order derivative on a nonuniform 3-point stencil.
double deriv3(double vm, double v0, double vp, double hm, double hp) {
    return (hm / (hp * (hm + hp))) * (vp - v0) + (hp / (hm * (hm + hp))) * (v0 - vm);
}

}  // namespace

void ElectrodeGeometry::validate() const {
    if (!(gap_um > 0.0)) throw std::invalid_argument("geometry: gap must be > 0");
    if (!(electrode_width_um > 0.0) || !(electrode_thickness_um > 0.0))
        throw std::invalid_argument("geometry: electrode dimensions must be > 0");
    if (!(emitter_depth_nm >= 0.0))
        throw std::invalid_argument("geometry: emitter depth must be >= 0");
    if (!(epsilon_substrate >= 1.0))
        throw std::invalid_argument("geometry: epsilon must be >= 1");
}

FieldProblem build_problem(const ElectrodeGeometry& geom, double grid_spacing_um) {
    geom.validate();
    if (!(grid_spacing_um > 0.0))
        throw std::invalid_argument("field solver: grid spacing must be > 0");
    if (grid_spacing_um > geom.gap_um / 20.0 + kSnapTol)
        throw std::invalid_argument(
            "field solver: under-resolved grid, need >= 20 nodes across the gap");

    const double hg = geom.gap_um / 2.0;
    const double w = geom.electrode_width_um;
    const double t = geom.electrode_thickness_um;
    const double lx = hg + w + 5.0 * geom.gap_um;
    const double ly = 5.0 * geom.gap_um;
    const double hmax = geom.gap_um / 2.0;

    // x axis: uniform across the gap, graded through the electrodes and out
    std::vector<double> xh{0.0};
    append_uniform(xh, 0.0, hg, grid_spacing_um);
    append_graded(xh, hg + w, grid_spacing_um, hmax);
    if (std::abs(xh.back() - (hg + w)) > kSnapTol) xh.push_back(hg + w);
    std::sort(xh.begin(), xh.end());
    append_graded(xh, lx, grid_spacing_um, hmax);
    std::vector<double> xs = mirror_axis(xh);

    // y axis: refined near the surface so the emitter depth is resolved
    const double depth = geom.emitter_depth_nm * 1e-3;
    const double hy = depth > 0.0 ? std::min(grid_spacing_um, depth / 5.0)
                                  : grid_spacing_um;
    const double fine_down = std::max({6.0 * depth, 3.0 * hy, 0.2});
    std::vector<double> ydown{0.0};
    append_uniform(ydown, 0.0, fine_down, hy);
    append_graded(ydown, ly, grid_spacing_um, hmax);
    std::vector<double> yup{0.0};
    append_uniform(yup, 0.0, t, std::min(grid_spacing_um, t / 2.0));
    append_graded(yup, ly, grid_spacing_um, hmax);

    std::vector<double> ys;
    for (auto it = ydown.rbegin(); it != ydown.rend(); ++it) ys.push_back(-*it);
    ys.insert(ys.end(), yup.begin() + 1, yup.end());

    FieldProblem p;
    p.xs_um = std::move(xs);
    p.ys_um = std::move(ys);
    const int ncx = static_cast<int>(p.xs_um.size()) - 1;
    const int ncy = static_cast<int>(p.ys_um.size()) - 1;
    p.cell_epsilon.assign(static_cast<size_t>(ncx) * ncy, 1.0);
    for (int iy = 0; iy < ncy; ++iy) {
        const double yc = 0.5 * (p.ys_um[iy] + p.ys_um[iy + 1]);
        if (yc < 0.0)
            for (int ix = 0; ix < ncx; ++ix)
                p.cell_epsilon[static_cast<size_t>(iy) * ncx + ix] =
                    geom.epsilon_substrate;
    }

    const double v2 = geom.applied_voltage_v / 2.0;
    p.electrodes.push_back({-(hg + w), -hg, 0.0, t, -v2});
    p.electrodes.push_back({hg, hg + w, 0.0, t, +v2});
    return p;
}

FieldMap solve_problem(const FieldProblem& problem, int max_iter, double tol) {
    const int nx = static_cast<int>(problem.xs_um.size());
    const int ny = static_cast<int>(problem.ys_um.size());
    if (nx < 3 || ny < 3)
        throw std::invalid_argument("field solver: grid too small");
    (void)max_iter;

    const auto& xs = problem.xs_um;
    const auto& ys = problem.ys_um;
    const int ncx = nx - 1;

    auto node = [nx](int ix, int iy) { return static_cast<size_t>(iy) * nx + ix; };
    auto eps_cell = [&](int cx, int cy) -> double {
        if (cx < 0 || cy < 0 || cx >= nx - 1 || cy >= ny - 1) return 0.0;
        return problem.cell_epsilon[static_cast<size_t>(cy) * ncx + cx];
    };
    // conductance between (ix,iy) and (ix+1,iy)
    auto g_east = [&](int ix, int iy) -> double {
        const double dx = xs[ix + 1] - xs[ix];
        double g = 0.0;
        if (iy > 0) g += eps_cell(ix, iy - 1) * (ys[iy] - ys[iy - 1]) / 2.0;
        if (iy < ny - 1) g += eps_cell(ix, iy) * (ys[iy + 1] - ys[iy]) / 2.0;
        return g / dx;
    };
    auto g_north = [&](int ix, int iy) -> double {
        const double dy = ys[iy + 1] - ys[iy];
        double g = 0.0;
        if (ix > 0) g += eps_cell(ix - 1, iy) * (xs[ix] - xs[ix - 1]) / 2.0;
        if (ix < nx - 1) g += eps_cell(ix, iy) * (xs[ix + 1] - xs[ix]) / 2.0;
        return g / dy;
    };

    std::vector<char> fixed(static_cast<size_t>(nx) * ny, 0);
    std::vector<double> value(static_cast<size_t>(nx) * ny, 0.0);
    double vref = 0.0;
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix)
            for (const auto& r : problem.electrodes)
                if (in_rect(r, xs[ix], ys[iy])) {
                    fixed[node(ix, iy)] = 1;
                    value[node(ix, iy)] = r.voltage_v;
                    vref = std::max(vref, std::abs(r.voltage_v));
                }
    if (vref == 0.0) vref = 1.0;

    std::vector<int> unknown(static_cast<size_t>(nx) * ny, -1);
    int n_free = 0;
    for (size_t k = 0; k < fixed.size(); ++k)
        if (!fixed[k]) unknown[k] = n_free++;

    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_free);
    trip.reserve(static_cast<size_t>(n_free) * 5);
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const size_t k = node(ix, iy);
            if (fixed[k]) continue;
            const int row = unknown[k];
            double diag = 0.0;
            const auto couple = [&](int jx, int jy, double g) {
                if (g <= 0.0) return;
                diag += g;
                const size_t kk = node(jx, jy);
                if (fixed[kk])
                    rhs(row) += g * value[kk];
                else
                    trip.emplace_back(row, unknown[kk], -g);
            };
            if (ix + 1 < nx) couple(ix + 1, iy, g_east(ix, iy));
            if (ix > 0) couple(ix - 1, iy, g_east(ix - 1, iy));
            if (iy + 1 < ny) couple(ix, iy + 1, g_north(ix, iy));
            if (iy > 0) couple(ix, iy - 1, g_north(ix, iy - 1));
            trip.emplace_back(row, row, diag);
        }
    }

    Eigen::SparseMatrix<double> a(n_free, n_free);
    a.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
    solver.compute(a);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("field solver: factorization failed");
    Eigen::VectorXd sol = solver.solve(rhs);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("field solver: solve failed");

    FieldMap map;
    map.xs_um = xs;
    map.ys_um = ys;
    map.potential_v.resize(static_cast<size_t>(nx) * ny);
    for (size_t k = 0; k < map.potential_v.size(); ++k)
        map.potential_v[k] = fixed[k] ? value[k] : sol(unknown[k]);
    map.iterations = 1;

    // relative max-norm defect of the discrete equations
    double worst = 0.0;
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const size_t k = node(ix, iy);
            if (fixed[k]) continue;
            double r = 0.0, gsum = 0.0;
            const auto acc = [&](int jx, int jy, double g) {
                if (g <= 0.0) return;
                r += g * (map.potential_v[node(jx, jy)] - map.potential_v[k]);
                gsum += g;
            };
            if (ix + 1 < nx) acc(ix + 1, iy, g_east(ix, iy));
            if (ix > 0) acc(ix - 1, iy, g_east(ix - 1, iy));
            if (iy + 1 < ny) acc(ix, iy + 1, g_north(ix, iy));
            if (iy > 0) acc(ix, iy - 1, g_north(ix, iy - 1));
            if (gsum > 0.0) worst = std::max(worst, std::abs(r) / (gsum * vref));
        }
    }
    map.residual = worst;
    if (worst > tol)
        throw std::runtime_error(
            "field solver: residual " + std::to_string(worst) +
            " above tolerance " + std::to_string(tol));
    return map;
}

FieldMap solve_potential(const ElectrodeGeometry& geom, double grid_spacing_um,
                         int max_iter, double tol) {
    FieldMap map = solve_problem(build_problem(geom, grid_spacing_um), max_iter, tol);
    map.grid_spacing_um = grid_spacing_um;
    return map;
}

std::pair<double, double> field_at(const FieldMap& map, double x_um, double y_um) {
    const auto& xs = map.xs_um;
    const auto& ys = map.ys_um;
    const int nx = map.nx(), ny = map.ny();
    if (x_um < xs[1] || x_um > xs[nx - 2] || y_um < ys[1] || y_um > ys[ny - 2])
        throw std::out_of_range("field_at: point outside the interior of the domain");

    const int ix = static_cast<int>(
        std::upper_bound(xs.begin() + 1, xs.end() - 2, x_um) - xs.begin() - 1);
    const int iy = static_cast<int>(
        std::upper_bound(ys.begin() + 1, ys.end() - 2, y_um) - ys.begin() - 1);

    double fx[2][2], fy[2][2];
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const int i = ix + a, j = iy + b;
            fx[a][b] = -deriv3(map.at(i - 1, j), map.at(i, j), map.at(i + 1, j),
                               xs[i] - xs[i - 1], xs[i + 1] - xs[i]);
            fy[a][b] = -deriv3(map.at(i, j - 1), map.at(i, j), map.at(i, j + 1),
                               ys[j] - ys[j - 1], ys[j + 1] - ys[j]);
        }
    }
    const double tx = (x_um - xs[ix]) / (xs[ix + 1] - xs[ix]);
    const double ty = (y_um - ys[iy]) / (ys[iy + 1] - ys[iy]);
    auto lerp2 = [&](double v[2][2]) {
        return (1 - tx) * ((1 - ty) * v[0][0] + ty * v[0][1]) +
               tx * ((1 - ty) * v[1][0] + ty * v[1][1]);
    };
    return {lerp2(fx), lerp2(fy)};
}

double bias_to_local_field(const ElectrodeGeometry& geom, double voltage_v,
                           double grid_spacing_um) {
    ElectrodeGeometry g = geom;
    g.applied_voltage_v = voltage_v;
    if (voltage_v == 0.0) return 0.0;
    const FieldMap map = solve_potential(g, grid_spacing_um);
    const auto [fx, fy] = field_at(map, g.emitter_lateral_offset_um,
                                   -g.emitter_depth_nm * 1e-3);
    return lorentz_local_field(std::hypot(fx, fy), g.epsilon_substrate);
}

}  // namespace snvstark

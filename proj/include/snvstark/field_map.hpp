#pragma once

#include <utility>
#include <vector>

namespace snvstark {

// Two surface electrodes on a dielectric half-space, 2D cross-section.
// Diamond fills y < 0, vacuum y > 0; the electrodes sit on the surface at
// +/- applied_voltage / 2 and the emitter is below the gap center.
struct ElectrodeGeometry {
    double gap_um = 2.0;
    double electrode_width_um = 5.0;
    double electrode_thickness_um = 0.1;
    double applied_voltage_v = 200.0;
    double epsilon_substrate = 5.7;
    double emitter_depth_nm = 76.0;
    double emitter_lateral_offset_um = 0.0;

    void validate() const;  // throws std::invalid_argument
};

struct DirichletRect {
    double x0, x1, y0, y1;  // um, inclusive
    double voltage_v;
};

// Tensor-product grid with a per-cell permittivity and Dirichlet rectangles.
struct FieldProblem {
    std::vector<double> xs_um;            // strictly increasing node coords
    std::vector<double> ys_um;
    std::vector<double> cell_epsilon;     // (nx-1) * (ny-1), row-major in x
    std::vector<DirichletRect> electrodes;

    double epsilon_at_cell(int ix, int iy) const {
        return cell_epsilon[static_cast<size_t>(iy) * (xs_um.size() - 1) + ix];
    }
};

struct FieldMap {
    std::vector<double> xs_um;
    std::vector<double> ys_um;
    std::vector<double> potential_v;  // nx * ny, index iy * nx + ix
    double grid_spacing_um = 0.0;     // spacing of the refined region
    double residual = 0.0;            // relative max-norm defect
    int iterations = 0;

    int nx() const { return static_cast<int>(xs_um.size()); }
    int ny() const { return static_cast<int>(ys_um.size()); }
    double at(int ix, int iy) const {
        return potential_v[static_cast<size_t>(iy) * nx() + ix];
    }
};

// Discretize and solve div(eps grad V) = 0 with natural (zero-flux) outer
// boundaries. Throws std::runtime_error carrying the final residual when the
// tolerance is not met within max_iter solver iterations.
FieldMap solve_problem(const FieldProblem& problem, int max_iter = 10000,
                       double tol = 1e-8);

// Build the graded tensor grid for an electrode geometry. grid_spacing_um is
// the target spacing around the gap; the mesh refines further near the
// surface so the emitter depth is resolved by >= 4 nodes, and coarsens
// geometrically toward the outer box at >= 5 gap widths.
FieldProblem build_problem(const ElectrodeGeometry& geom, double grid_spacing_um);

FieldMap solve_potential(const ElectrodeGeometry& geom, double grid_spacing_um,
                         int max_iter = 10000, double tol = 1e-8);

// F = -grad V, bilinear-interpolated, in MV/m (== V/um). Throws when the
// point is outside the domain or within one cell of the outer boundary.
std::pair<double, double> field_at(const FieldMap& map, double x_um, double y_um);

// |F| at the emitter for the given bias, Lorentz-corrected to the local
// field inside the dielectric. Linear in voltage.
double bias_to_local_field(const ElectrodeGeometry& geom, double voltage_v,
                           double grid_spacing_um = 0.05);

}  // namespace snvstark

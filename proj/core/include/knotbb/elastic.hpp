#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace knotbb::elastic {

using Vec3 = Eigen::Vector3d;

// Closed polygon in 3-space approximating a unit-length knot embedding.
struct PolygonalCurve {
    std::vector<Vec3> vertices;

    int size() const { return static_cast<int>(vertices.size()); }
    const Vec3& vertex(int i) const { return vertices[mod(i)]; }
    Vec3 edge(int i) const { return vertices[mod(i + 1)] - vertices[mod(i)]; }
    int mod(int i) const {
        const int n = size();
        return ((i % n) + n) % n;
    }

    double length() const;
    void validate() const;  // n >= 8, consecutive vertices distinct
};

// Scale so the total length is exactly 1.
PolygonalCurve normalized(const PolygonalCurve& c);
// Redistribute n vertices at equal arclength along the polygon.
PolygonalCurve resample_uniform(const PolygonalCurve& c, int n);

// Turning angles phi_i and dual lengths l_i = (|e_{i-1}| + |e_i|)/2; the
// discrete curvature phi_i / l_i makes the round unit-length polygon land
// exactly on (2*pi)^2 bending energy.
double bending_energy(const PolygonalCurve& c);
double total_curvature(const PolygonalCurve& c);

inline constexpr double kInfiniteRopelength = std::numeric_limits<double>::infinity();

// Thickness = min(local radius bound from turning angles, half the smallest
// doubly-critical distance between non-adjacent edges). Touching strands give
// zero thickness and the infinite-ropelength sentinel.
double thickness(const PolygonalCurve& c);
double ropelength(const PolygonalCurve& c);  // length / thickness

struct EnergyBreakdown {
    double e_bend = 0;
    double total_curvature = 0;
    double ropelength = 0;
    double e_theta = 0;
    double thickness = 0;
};

EnergyBreakdown total_energy(const PolygonalCurve& c, double theta);

// Analytic gradient of e_theta with respect to the vertex positions.
// Matches central finite differences to ~1e-6 relative error away from
// thickness ties. Throws on sentinel configurations (no gradient there).
std::vector<Vec3> gradient(const PolygonalCurve& c, double theta);

struct SimParams {
    double theta_start = 1e-2;
    double theta_end = 1e-4;
    double theta_factor = 10.0;
    int max_steps = 4000;         // per continuation stage
    double grad_tol = 2e-3;
    int n_vertices = 128;
    double step_init = 0.05;
    double step_min = 1e-12;
    double armijo_c = 1e-4;
    double precond_beta = 4e-7;   // weight of the squared-Laplacian metric term
    double thickness_floor = 1e-4;
    double init_rho = 0.25;
    double jitter = 1e-6;
    std::uint64_t seed = 1;
    int log_every = 25;
};

// Plain key-value configuration (# comments, key = value); unknown keys are
// errors, missing keys keep their defaults.
SimParams load_sim_params(const std::string& path);

struct EnergySample {
    int step = 0;
    double theta = 0;
    EnergyBreakdown energy;
};

enum class StageStop { GradientTolerance, StepCap, LineSearchStall };

struct StageLog {
    double theta = 0;
    int steps = 0;
    StageStop stop = StageStop::StepCap;
    EnergyBreakdown final_energy;
};

struct MinimizeResult {
    PolygonalCurve curve;
    std::vector<EnergySample> trace;
    std::vector<StageLog> stages;
    EnergyBreakdown final_energy;
};

// Raised when the thickness floor or the total-curvature guard trips along a
// trajectory (a strand passage would have to pass through zero thickness).
struct KnotGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Penalized gradient flow with theta continuation. Accepted steps never
// increase e_theta; after each step the curve is rescaled to unit length and
// resampled to uniform edge lengths. bridge_index drives the total-curvature
// guard (total curvature must stay above 2*pi*bridge - 1e-3).
MinimizeResult minimize(const PolygonalCurve& c0, const SimParams& p, int bridge_index);

struct TorusBraidInit {
    double rho = 0.25;
    int n_vertices = 128;
    // Either a torus-knot pair (p winds around the tube, q around the axis)...
    int torus_p = 0, torus_q = 0;
    // ...or an alternating 3-braid word ('a'/'B') closed inside the tube.
    std::string braid_word;
};

// Curve inside the rho-torus around the unit circle, length-normalized.
// Every meridian disk is crossed exactly q (or strand-count) times; asserted.
PolygonalCurve braid_torus_init(const TorusBraidInit& spec);

// Meridian crossing count of a curve winding around the z-axis.
int meridian_crossings(const PolygonalCurve& c);

void write_energy_log(std::ostream& os, const std::vector<EnergySample>& trace);

}  // namespace knotbb::elastic

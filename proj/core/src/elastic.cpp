#include "knotbb/elastic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "knotbb/braidcensus.hpp"

namespace knotbb::elastic {

namespace {

constexpr double kPi = std::numbers::pi;

double turning_angle(const Vec3& e_prev, const Vec3& e_cur) {
    const Vec3 t1 = e_prev.normalized();
    const Vec3 t2 = e_cur.normalized();
    return std::atan2(t1.cross(t2).norm(), t1.dot(t2));
}

struct SegClosest {
    double s = 0, t = 0, dist = 0;
    Vec3 p, q;
};

SegClosest closest_points(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2) {
    const Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
    const double a = d1.squaredNorm(), e = d2.squaredNorm();
    const double f = d2.dot(r), c = d1.dot(r), b = d1.dot(d2);
    const double denom = a * e - b * b;
    double s = denom > 1e-18 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
    double t = e > 1e-18 ? (b * s + f) / e : 0.0;
    if (t < 0) {
        t = 0;
        s = std::clamp(-c / a, 0.0, 1.0);
    } else if (t > 1) {
        t = 1;
        s = std::clamp((b - c) / a, 0.0, 1.0);
    }
    SegClosest out;
    out.s = s;
    out.t = t;
    out.p = p1 + s * d1;
    out.q = p2 + t * d2;
    out.dist = (out.q - out.p).norm();
    return out;
}

// Local minimum of the distance along the curve at an endpoint: the offset
// vector must lie behind the incoming edge and ahead of the outgoing one.
bool critical_at_vertex(const Vec3& offset, const Vec3& incoming, const Vec3& outgoing) {
    constexpr double tol = 1e-9;
    return offset.dot(incoming.normalized()) >= -tol && offset.dot(outgoing.normalized()) <= tol;
}

struct ThicknessDetail {
    double value = 0;
    bool from_pair = false;
    int vertex = -1;        // minRad vertex
    int min_edge = -1;      // shorter adjacent edge at that vertex
    int ei = -1, ej = -1;   // active edge pair
    double s = 0, t = 0;
    Vec3 u;                 // unit vector q - p of the active pair
};

ThicknessDetail thickness_detail(const PolygonalCurve& c) {
    c.validate();
    const int n = c.size();

    ThicknessDetail best;
    best.value = std::numeric_limits<double>::infinity();

    for (int i = 0; i < n; ++i) {
        const Vec3 e_prev = c.edge(i - 1), e_cur = c.edge(i);
        const double phi = turning_angle(e_prev, e_cur);
        if (phi < 1e-12) continue;
        const double m = std::min(e_prev.norm(), e_cur.norm());
        const double r = m / (2.0 * std::tan(phi / 2.0));
        if (r < best.value) {
            best.value = r;
            best.from_pair = false;
            best.vertex = i;
            best.min_edge = e_prev.norm() <= e_cur.norm() ? c.mod(i - 1) : i;
        }
    }

    for (int i = 0; i < n; ++i) {
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;  // cyclically adjacent
            const SegClosest sc =
                closest_points(c.vertex(i), c.vertex(i + 1), c.vertex(j), c.vertex(j + 1));
            if (sc.dist < 1e-12) {
                ThicknessDetail touch;
                touch.value = 0;
                touch.from_pair = true;
                touch.ei = i;
                touch.ej = j;
                return touch;
            }
            if (sc.dist / 2.0 >= best.value) continue;

            const Vec3 offset = sc.q - sc.p;
            bool crit = true;
            constexpr double pe = 1e-9;
            if (sc.s <= pe)
                crit = critical_at_vertex(offset, c.edge(i - 1), c.edge(i));
            else if (sc.s >= 1 - pe)
                crit = critical_at_vertex(offset, c.edge(i), c.edge(i + 1));
            if (crit) {
                const Vec3 roffset = -offset;
                if (sc.t <= pe)
                    crit = critical_at_vertex(roffset, c.edge(j - 1), c.edge(j));
                else if (sc.t >= 1 - pe)
                    crit = critical_at_vertex(roffset, c.edge(j), c.edge(j + 1));
            }
            if (!crit) continue;

            best.value = sc.dist / 2.0;
            best.from_pair = true;
            best.ei = i;
            best.ej = j;
            best.s = sc.s;
            best.t = sc.t;
            best.u = offset / sc.dist;
        }
    }
    return best;
}

}  // namespace

double PolygonalCurve::length() const {
    double total = 0;
    for (int i = 0; i < size(); ++i) total += edge(i).norm();
    return total;
}

void PolygonalCurve::validate() const {
    if (size() < 8) throw std::invalid_argument("polygonal curves need at least 8 vertices");
    for (int i = 0; i < size(); ++i)
        if (edge(i).norm() < 1e-14) throw std::invalid_argument("curve has a degenerate edge");
}

PolygonalCurve normalized(const PolygonalCurve& c) {
    const double len = c.length();
    if (len <= 0) throw std::invalid_argument("curve has zero length");
    Vec3 centroid = Vec3::Zero();
    for (const auto& v : c.vertices) centroid += v;
    centroid /= c.size();
    PolygonalCurve out = c;
    for (auto& v : out.vertices) v = (v - centroid) / len;
    return out;
}

PolygonalCurve resample_uniform(const PolygonalCurve& c, int n) {
    const double len = c.length();
    PolygonalCurve out;
    out.vertices.reserve(n);
    const double step = len / n;
    int seg = 0;
    double seg_start = 0;
    double seg_len = c.edge(0).norm();
    for (int i = 0; i < n; ++i) {
        const double target = i * step;
        while (target > seg_start + seg_len) {
            seg_start += seg_len;
            ++seg;
            seg_len = c.edge(seg).norm();
        }
        const double local = (target - seg_start) / seg_len;
        out.vertices.push_back(c.vertex(seg) + local * c.edge(seg));
    }
    return out;
}

double bending_energy(const PolygonalCurve& c) {
    c.validate();
    double total = 0;
    for (int i = 0; i < c.size(); ++i) {
        const Vec3 e_prev = c.edge(i - 1), e_cur = c.edge(i);
        const double phi = turning_angle(e_prev, e_cur);
        const double l = 0.5 * (e_prev.norm() + e_cur.norm());
        total += phi * phi / l;
    }
    return total;
}

double total_curvature(const PolygonalCurve& c) {
    c.validate();
    double total = 0;
    for (int i = 0; i < c.size(); ++i) total += turning_angle(c.edge(i - 1), c.edge(i));
    return total;
}

double thickness(const PolygonalCurve& c) { return thickness_detail(c).value; }

double ropelength(const PolygonalCurve& c) {
    const double tau = thickness(c);
    if (tau <= 0) return kInfiniteRopelength;
    return c.length() / tau;
}

EnergyBreakdown total_energy(const PolygonalCurve& c, double theta) {
    if (theta <= 0) throw std::invalid_argument("theta must be positive");
    EnergyBreakdown e;
    e.e_bend = bending_energy(c);
    e.total_curvature = total_curvature(c);
    e.thickness = thickness(c);
    e.ropelength = e.thickness > 0 ? c.length() / e.thickness : kInfiniteRopelength;
    e.e_theta = e.e_bend + theta * e.ropelength;
    return e;
}

std::vector<Vec3> gradient(const PolygonalCurve& c, double theta) {
    if (theta <= 0) throw std::invalid_argument("theta must be positive");
    c.validate();
    const int n = c.size();
    std::vector<Vec3> g(n, Vec3::Zero());

    // bending part
    for (int i = 0; i < n; ++i) {
        const Vec3 e_prev = c.edge(i - 1), e_cur = c.edge(i);
        const double lp = e_prev.norm(), lc = e_cur.norm();
        const Vec3 t1 = e_prev / lp, t2 = e_cur / lc;
        const double cosv = t1.dot(t2);
        const double sinv = t1.cross(t2).norm();
        const double phi = std::atan2(sinv, cosv);
        const double l = 0.5 * (lp + lc);

        // d(phi^2/l) = (2 phi / l) dphi - (phi/l)^2 dl
        if (sinv > 1e-12) {
            const Vec3 n1 = (t2 - cosv * t1) / sinv;  // unit, orthogonal to t1
            const Vec3 n2 = (t1 - cosv * t2) / sinv;  // unit, orthogonal to t2
            const Vec3 dphi_dep = -n1 / lp;           // w.r.t. e_prev
            const Vec3 dphi_dec = -n2 / lc;           // w.r.t. e_cur
            const double w = 2.0 * phi / l;
            g[c.mod(i - 1)] -= w * dphi_dep;
            g[i] += w * (dphi_dep - dphi_dec);
            g[c.mod(i + 1)] += w * dphi_dec;
        }
        const double wl = -0.5 * phi * phi / (l * l);
        g[c.mod(i - 1)] -= wl * t1;
        g[i] += wl * (t1 - t2);
        g[c.mod(i + 1)] += wl * t2;
    }

    // penalty part: R = L / tau
    const ThicknessDetail td = thickness_detail(c);
    if (td.value <= 0) throw std::domain_error("touching strands: the penalty has no gradient");
    const double L = c.length();
    const double tau = td.value;

    std::vector<Vec3> dtau(n, Vec3::Zero());
    if (!td.from_pair) {
        const int i = td.vertex;
        const Vec3 e_prev = c.edge(i - 1), e_cur = c.edge(i);
        const double lp = e_prev.norm(), lc = e_cur.norm();
        const Vec3 t1 = e_prev / lp, t2 = e_cur / lc;
        const double cosv = t1.dot(t2);
        const double sinv = std::max(t1.cross(t2).norm(), 1e-12);
        const double phi = std::atan2(sinv, cosv);
        const double m = std::min(lp, lc);
        const double half = 0.5 * phi;

        // r = m / (2 tan(phi/2))
        const double dr_dm = 1.0 / (2.0 * std::tan(half));
        const double dr_dphi = -m / (4.0 * std::sin(half) * std::sin(half));

        const Vec3 n1 = (t2 - cosv * t1) / sinv;
        const Vec3 n2 = (t1 - cosv * t2) / sinv;
        const Vec3 dphi_dep = -n1 / lp;
        const Vec3 dphi_dec = -n2 / lc;
        dtau[c.mod(i - 1)] += dr_dphi * (-dphi_dep);
        dtau[i] += dr_dphi * (dphi_dep - dphi_dec);
        dtau[c.mod(i + 1)] += dr_dphi * dphi_dec;

        const int k = td.min_edge;
        const Vec3 tk = c.edge(k).normalized();
        dtau[k] += dr_dm * (-tk);
        dtau[c.mod(k + 1)] += dr_dm * tk;
    } else {
        // tau = d/2 with d the active doubly-critical pair distance
        const Vec3 half_u = 0.5 * td.u;
        dtau[td.ei] += -(1 - td.s) * half_u;
        dtau[c.mod(td.ei + 1)] += -td.s * half_u;
        dtau[td.ej] += (1 - td.t) * half_u;
        dtau[c.mod(td.ej + 1)] += td.t * half_u;
    }

    for (int i = 0; i < n; ++i) {
        const Vec3 dL = c.edge(i - 1).normalized() - c.edge(i).normalized();
        g[i] += theta * (dL / tau - L / (tau * tau) * dtau[i]);
    }
    return g;
}

SimParams load_sim_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    SimParams p;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string all = trim(line);
        if (all.empty()) continue;
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "theta_start") p.theta_start = std::stod(value);
            else if (key == "theta_end") p.theta_end = std::stod(value);
            else if (key == "theta_factor") p.theta_factor = std::stod(value);
            else if (key == "max_steps") p.max_steps = std::stoi(value);
            else if (key == "grad_tol") p.grad_tol = std::stod(value);
            else if (key == "n_vertices") p.n_vertices = std::stoi(value);
            else if (key == "step_init") p.step_init = std::stod(value);
            else if (key == "step_min") p.step_min = std::stod(value);
            else if (key == "armijo_c") p.armijo_c = std::stod(value);
            else if (key == "precond_beta") p.precond_beta = std::stod(value);
            else if (key == "thickness_floor") p.thickness_floor = std::stod(value);
            else if (key == "init_rho") p.init_rho = std::stod(value);
            else if (key == "jitter") p.jitter = std::stod(value);
            else if (key == "seed") p.seed = std::stoull(value);
            else if (key == "log_every") p.log_every = std::stoi(value);
            else
                throw std::runtime_error(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
        }
    }
    return p;
}

namespace {

Eigen::MatrixXd precondition_matrix(int n, double beta) {
    // P = I + beta * Lap^2 with the cyclic second difference scaled by 1/h^2.
    const double h = 1.0 / n;
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        lap(i, i) = -2.0 / (h * h);
        lap(i, (i + 1) % n) = 1.0 / (h * h);
        lap(i, (i + n - 1) % n) = 1.0 / (h * h);
    }
    return Eigen::MatrixXd::Identity(n, n) + beta * (lap * lap);
}

double dot_fields(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i].dot(b[i]);
    return s;
}

void guard_trajectory(const EnergyBreakdown& e, const SimParams& p, int bridge_index) {
    if (e.thickness < p.thickness_floor)
        throw KnotGuardError("thickness floor reached: a strand passage is imminent");
    if (e.total_curvature <= 2.0 * kPi * bridge_index - 1e-3)
        throw KnotGuardError("total curvature fell to the bridge-index bound");
}

}  // namespace

MinimizeResult minimize(const PolygonalCurve& c0, const SimParams& p, int bridge_index) {
    if (bridge_index < 1) throw std::invalid_argument("bridge index must be positive");

    PolygonalCurve c = c0;
    if (p.jitter > 0) {
        std::mt19937_64 rng(p.seed);
        std::uniform_real_distribution<double> u(-p.jitter, p.jitter);
        for (auto& v : c.vertices) v += Vec3(u(rng), u(rng), u(rng));
    }
    const int n = c.size();
    c = resample_uniform(normalized(c), n);
    c = normalized(c);

    std::vector<double> thetas;
    for (double t = p.theta_start; t > p.theta_end * 1.0000001; t /= p.theta_factor)
        thetas.push_back(t);
    thetas.push_back(p.theta_end);

    const Eigen::MatrixXd pmat = precondition_matrix(n, p.precond_beta);
    const Eigen::LLT<Eigen::MatrixXd> solver(pmat);

    MinimizeResult result;
    int global_step = 0;

    for (double theta : thetas) {
        EnergyBreakdown cur = total_energy(c, theta);
        guard_trajectory(cur, p, bridge_index);
        result.trace.push_back({global_step, theta, cur});

        StageLog stage;
        stage.theta = theta;
        stage.stop = StageStop::StepCap;
        double alpha = p.step_init;

        int step = 0;
        for (; step < p.max_steps; ++step) {
            std::vector<Vec3> g = gradient(c, theta);

            // remove the scale mode (the projection re-imposes unit length)
            std::vector<Vec3> scale(n);
            Vec3 centroid = Vec3::Zero();
            for (const auto& v : c.vertices) centroid += v;
            centroid /= n;
            for (int i = 0; i < n; ++i) scale[i] = c.vertices[i] - centroid;
            const double coeff = dot_fields(g, scale) / dot_fields(scale, scale);
            for (int i = 0; i < n; ++i) g[i] -= coeff * scale[i];

            if (std::sqrt(dot_fields(g, g)) < p.grad_tol) {
                stage.stop = StageStop::GradientTolerance;
                break;
            }

            // preconditioned direction
            Eigen::MatrixXd rhs(n, 3);
            for (int i = 0; i < n; ++i) rhs.row(i) = g[i].transpose();
            const Eigen::MatrixXd dir = solver.solve(rhs);
            std::vector<Vec3> d(n);
            for (int i = 0; i < n; ++i) d[i] = dir.row(i).transpose();
            const double gd = dot_fields(g, d);

            bool accepted = false;
            while (alpha >= p.step_min) {
                PolygonalCurve cand = c;
                for (int i = 0; i < n; ++i) cand.vertices[i] -= alpha * d[i];
                cand = normalized(resample_uniform(normalized(cand), n));
                EnergyBreakdown ce;
                try {
                    ce = total_energy(cand, theta);
                } catch (const std::invalid_argument&) {
                    alpha *= 0.5;
                    continue;
                }
                if (std::isfinite(ce.e_theta) && ce.e_theta <= cur.e_theta - p.armijo_c * alpha * gd) {
                    c = std::move(cand);
                    cur = ce;
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!accepted) {
                stage.stop = StageStop::LineSearchStall;
                break;
            }

            guard_trajectory(cur, p, bridge_index);
            if (cur.total_curvature * cur.total_curvature > cur.e_bend * c.length() * 1.0000001)
                throw KnotGuardError("discrete Cauchy-Schwarz chain violated along the trajectory");

            ++global_step;
            if (global_step % p.log_every == 0) result.trace.push_back({global_step, theta, cur});
            alpha = std::min(alpha * 1.6, 1e3);
        }

        stage.steps = step;
        stage.final_energy = cur;
        result.stages.push_back(stage);
        result.trace.push_back({global_step, theta, cur});
    }

    result.curve = c;
    result.final_energy = result.stages.back().final_energy;
    return result;
}

PolygonalCurve braid_torus_init(const TorusBraidInit& spec) {
    if (spec.rho <= 0 || spec.rho >= 1)
        throw std::invalid_argument("tube radius must lie in (0, 1)");
    if (spec.n_vertices < 8) throw std::invalid_argument("need at least 8 vertices");

    PolygonalCurve c;
    c.vertices.reserve(spec.n_vertices);

    int expected_crossings = 0;
    if (spec.braid_word.empty()) {
        const int p = spec.torus_p, q = spec.torus_q;
        if (p < 1 || q < 1) throw std::invalid_argument("torus parameters must be positive");
        expected_crossings = q;
        for (int i = 0; i < spec.n_vertices; ++i) {
            const double t = static_cast<double>(i) / spec.n_vertices;
            const double a = 2.0 * kPi * p * t;
            const double b = 2.0 * kPi * q * t;
            c.vertices.emplace_back((1.0 + spec.rho * std::cos(a)) * std::cos(b),
                                    (1.0 + spec.rho * std::cos(a)) * std::sin(b),
                                    spec.rho * std::sin(a));
        }
    } else {
        const auto w = braidcensus::parse_word(spec.braid_word);
        if (braidcensus::closure_components(w) != 1)
            throw std::invalid_argument("braid initializer supports one-component closures only");
        constexpr int k = 3;
        expected_crossings = k;

        // slot occupancy before each letter
        std::vector<std::array<int, k>> occupancy(w.length + 1);
        occupancy[0] = {0, 1, 2};
        for (int l = 0; l < w.length; ++l) {
            occupancy[l + 1] = occupancy[l];
            const int lo = ((w.bits >> l) & 1) ? 1 : 0;  // sigma_2^{-1} swaps slots 1,2
            std::swap(occupancy[l + 1][lo], occupancy[l + 1][lo + 1]);
        }

        const double spread = 0.6 * spec.rho;
        auto slot_u = [&](int slot) { return spread * (slot - 1); };

        // strand traversal order under the closure permutation
        std::array<int, k> next{};
        for (int s = 0; s < k; ++s) {
            auto it = std::find(occupancy[w.length].begin(), occupancy[w.length].end(), s);
            next[s] = static_cast<int>(it - occupancy[w.length].begin());
        }

        for (int i = 0; i < spec.n_vertices; ++i) {
            const double t = static_cast<double>(i) / spec.n_vertices;
            const double big = t * k;  // sweeps around the axis
            int sweep = static_cast<int>(big);
            if (sweep >= k) sweep = k - 1;
            const double phi_frac = big - sweep;

            int strand = 0;
            for (int s = 0; s < sweep; ++s) strand = next[strand];

            const double letter_pos = phi_frac * w.length;
            int letter = static_cast<int>(letter_pos);
            if (letter >= w.length) letter = w.length - 1;
            const double frac = letter_pos - letter;

            auto find_slot = [&](int l) {
                auto it = std::find(occupancy[l].begin(), occupancy[l].end(), strand);
                return static_cast<int>(it - occupancy[l].begin());
            };
            const int slot = find_slot(letter);
            double u = slot_u(slot), v = 0;
            const int lo = ((w.bits >> letter) & 1) ? 1 : 0;
            if (slot == lo || slot == lo + 1) {
                const double mid = 0.5 * (slot_u(lo) + slot_u(lo + 1));
                const double arm = slot_u(slot) - mid;
                const double dir = ((w.bits >> letter) & 1) ? -1.0 : 1.0;
                const double ang = dir * kPi * frac;
                u = mid + arm * std::cos(ang);
                v = arm * std::sin(ang);
            }

            const double phi = 2.0 * kPi * phi_frac;
            c.vertices.emplace_back((1.0 + u) * std::cos(phi), (1.0 + u) * std::sin(phi), v);
        }
    }

    c = normalized(resample_uniform(c, spec.n_vertices));
    if (meridian_crossings(c) != expected_crossings)
        throw InvariantError("meridian crossing count disagrees with the strand count");
    return c;
}

int meridian_crossings(const PolygonalCurve& c) {
    double winding = 0;
    for (int i = 0; i < c.size(); ++i) {
        const Vec3& a = c.vertex(i);
        const Vec3& b = c.vertex(i + 1);
        double da = std::atan2(b.y(), b.x()) - std::atan2(a.y(), a.x());
        while (da > kPi) da -= 2 * kPi;
        while (da < -kPi) da += 2 * kPi;
        winding += da;
    }
    return static_cast<int>(std::llround(std::abs(winding) / (2 * kPi)));
}

void write_energy_log(std::ostream& os, const std::vector<EnergySample>& trace) {
    os << "step,theta,e_bend,total_curvature,ropelength,e_theta,min_thickness\n";
    os.precision(12);
    for (const auto& s : trace) {
        os << s.step << ',' << s.theta << ',' << s.energy.e_bend << ',' << s.energy.total_curvature
           << ',' << s.energy.ropelength << ',' << s.energy.e_theta << ',' << s.energy.thickness
           << '\n';
    }
}

}  // namespace knotbb::elastic

#include "app.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "knotbb/braidcensus.hpp"
#include "knotbb/montesinos.hpp"
#include "knotbb/rational.hpp"

namespace knotbb::cli {

using nlohmann::json;

namespace {

constexpr const char* kSchema = "knotbb/v1";

// -------------------------------------------------------------- parsing ---

long long parse_int(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("cannot parse ") + what + ": '" + s + "'");
    }
}

// "p/q" with optional leading minus, as beta/alpha
std::pair<long long, long long> parse_fraction(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos)
        throw std::invalid_argument("fractions are written beta/alpha, e.g. 1/2 or -2/3");
    const long long beta = parse_int(s.substr(0, slash), "fraction numerator");
    const long long alpha = parse_int(s.substr(slash + 1), "fraction denominator");
    return {beta, alpha};
}

std::vector<std::pair<long long, long long>> parse_tangle_list(const std::string& s) {
    std::vector<std::pair<long long, long long>> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse_fraction(item));
    }
    if (out.empty()) throw std::invalid_argument("empty tangle list");
    return out;
}

// ------------------------------------------------------------ rendering ---

void render_human(const json& j, std::ostream& out, int indent = 0) {
    const std::string pad(indent, ' ');
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            out << pad << key << ":\n";
            render_human(value, out, indent + 2);
        } else if (value.is_array() && !value.empty() && value.front().is_object()) {
            out << pad << key << ":\n";
            for (const auto& item : value) render_human(item, out, indent + 2);
        } else {
            out << pad << std::left << std::setw(std::max<int>(2, 24 - indent)) << key
                << value.dump() << "\n";
        }
    }
}

struct Output {
    bool machine = false;
    std::string out_path;

    void emit(const json& j, std::ostream& out) const {
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            if (!f) throw std::runtime_error("cannot write " + out_path);
            f << j.dump() << "\n";
        }
        if (machine) out << j.dump() << "\n";
        else render_human(j, out);
    }

    void emit_lines(const std::vector<json>& lines, std::ostream& out) const {
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            if (!f) throw std::runtime_error("cannot write " + out_path);
            for (const auto& j : lines) f << j.dump() << "\n";
        }
        if (machine)
            for (const auto& j : lines) out << j.dump() << "\n";
        else
            for (const auto& j : lines) {
                render_human(j, out);
                out << "\n";
            }
    }
};

// ------------------------------------------------------------- reports ----

json two_bridge_report(long long alpha, long long beta) {
    const Fraction f(alpha, beta);
    const auto cf = standard_cf(f);
    json j;
    j["schema"] = kSchema;
    j["kind"] = "two-bridge";
    j["alpha"] = f.alpha;
    j["beta"] = f.beta;
    j["continued_fraction"] = cf.entries;
    j["crossing_number"] = cf.crossing_count();
    const int comps = two_bridge_components(f);
    j["components"] = comps;
    j["bridge_index"] = 2;

    json orientations = json::array();
    long long best = -1;
    for (int rev = 0; rev < comps; ++rev) {
        const auto sv = orient_and_sign(
            cf, rev ? TwoBridgeOrientation::Reversed : TwoBridgeOrientation::Default);
        const long long b = braid_index_oriented(sv);
        orientations.push_back({{"orientation", rev ? "reversed" : "default"},
                                {"signed_vector", sv.entries},
                                {"braid_index", b}});
        best = best < 0 ? b : std::min(best, b);
    }
    j["orientations"] = orientations;
    j["braid_index_unoriented"] = best;
    j["is_bb"] = is_bb_two_bridge(f);
    return j;
}

json montesinos_report(const std::string& tangles, long long delta) {
    const auto m = MontesinosLink::make(parse_tangle_list(tangles), delta);
    json j;
    j["schema"] = kSchema;
    j["kind"] = "montesinos";
    json tj = json::array();
    for (const auto& t : m.tangles)
        tj.push_back(std::to_string(t.sign * t.frac.beta) + "/" + std::to_string(t.frac.alpha));
    j["tangles"] = tj;
    j["delta"] = m.delta;
    j["s"] = m.tangle_count();
    j["crossing_number"] = m.crossing_count();
    j["components"] = components(m);
    j["bridge_index"] = bridge_index(m);
    j["alternating"] = m.alternating();

    if (m.alternating()) {
        j["braid_index_unoriented"] = braid_index_unoriented(m);
        const auto bb = is_bb_alternating(m);
        j["is_bb"] = bb.is_bb;
        if (bb.witness) {
            json bits = json::array();
            for (bool b : bb.witness->reverse) bits.push_back(b ? 1 : 0);
            j["witness_orientation"] = bits;
        }
    } else if (m.delta == 0) {
        j["nonalternating_verdict"] =
            is_bb_nonalternating_sufficient(m) == NonAlternatingVerdict::ProvenBB ? "proven-bb"
                                                                                  : "no-verdict";
        if (j["nonalternating_verdict"] == "proven-bb") {
            j["bridge_index"] = bridge_index(m);
            j["braid_index"] = bridge_index(m);
        }
    } else {
        j["nonalternating_verdict"] = "no-verdict";
        j["note"] = "mixed signs with half twists: no proven criterion applies";
    }
    return j;
}

json census_record(const braidcensus::CensusReport& r) {
    json j;
    j["schema"] = kSchema;
    j["kind"] = "census";
    j["n"] = r.n;
    j["raw_words"] = r.raw_words;
    j["classes"] = r.classes;
    j["reduced_classes"] = r.reduced_classes;
    j["flype_free_classes"] = r.flype_free_classes;
    j["two_bridge_count"] = r.two_bridge_count;
    j["bb_lower_bound_ok"] = r.bb_lower_bound_ok;
    j["components"] = {{"1", r.components_breakdown[0]},
                       {"2", r.components_breakdown[1]},
                       {"3", r.components_breakdown[2]}};
    j["one_component_share"] = r.one_component_share();
    return j;
}

json polyhedron_report(int k) {
    const auto p = braidcensus::conway_polyhedron(k);
    json j;
    j["schema"] = kSchema;
    j["kind"] = "polyhedron";
    j["k"] = k;
    j["crossings"] = p.crossings;
    j["word"] = braidcensus::word_letters(p.word);
    j["components"] = p.components;
    j["braid_index"] = p.braid_index;
    j["bridge_index"] = p.bridge_index;
    j["is_bb"] = p.is_bb;
    return j;
}

json conway_algebraic_report(long long a1, long long b1, long long a2, long long b2,
                             const std::string& variant) {
    static const std::map<std::string, ConwayAlgebraicVariant> variants = {
        {"plain", ConwayAlgebraicVariant::Plain},
        {"negated-join", ConwayAlgebraicVariant::NegatedJoin},
        {"split-b2", ConwayAlgebraicVariant::SplitB2},
        {"split-a1b1", ConwayAlgebraicVariant::SplitA1B1},
        {"split-neg-a1", ConwayAlgebraicVariant::SplitNegA1}};
    const auto it = variants.find(variant);
    if (it == variants.end()) throw std::invalid_argument("unknown bracket variant: " + variant);
    const auto r = conway_algebraic_bb(a1, b1, a2, b2, it->second);
    json j;
    j["schema"] = kSchema;
    j["kind"] = "conway-algebraic";
    j["a1"] = a1;
    j["b1"] = b1;
    j["a2"] = a2;
    j["b2"] = b2;
    j["variant"] = variant;
    j["verdict"] = r.proven_bb3 ? "proven-bb3" : "not-applicable";
    if (r.proven_bb3) {
        j["braid_index"] = 3;
        j["bridge_index"] = 3;
        j["parallel_orientation_assumed"] = r.parallel_orientation_assumed;
    }
    return j;
}

struct KnotChoice {
    elastic::TorusBraidInit init;
    int bridge = 0;
    std::string name;
};

KnotChoice resolve_knot(const std::string& name, double rho, int n_vertices,
                        std::optional<int> bridge_flag) {
    KnotChoice k;
    k.name = name;
    k.init.rho = rho;
    k.init.n_vertices = n_vertices;
    if (name == "trefoil") {
        k.init.torus_p = 3;
        k.init.torus_q = 2;
        k.bridge = 2;
    } else if (name == "figure-eight") {
        k.init.braid_word = "aBaB";
        k.bridge = 2;  // bridge index of the 2-bridge link B(5,2)
    } else if (name == "8_19") {
        k.init.torus_p = 4;
        k.init.torus_q = 3;
        k.bridge = 3;
    } else if (name.rfind("torus:", 0) == 0) {
        const auto comma = name.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("torus knots are written torus:p,q");
        k.init.torus_p = static_cast<int>(parse_int(name.substr(6, comma - 6), "torus p"));
        k.init.torus_q = static_cast<int>(parse_int(name.substr(comma + 1), "torus q"));
        k.bridge = std::min(k.init.torus_p, k.init.torus_q);
    } else if (name.rfind("braid:", 0) == 0) {
        k.init.braid_word = name.substr(6);
        if (!bridge_flag)
            throw std::invalid_argument(
                "braid-word initializers need --bridge (the guard cannot infer it)");
        k.bridge = *bridge_flag;
    } else {
        throw std::invalid_argument("unknown knot selector: " + name);
    }
    if (bridge_flag && name.rfind("braid:", 0) != 0) k.bridge = *bridge_flag;
    return k;
}

json simulate_report(const KnotChoice& k, const elastic::SimParams& p,
                     const elastic::MinimizeResult& res) {
    json j;
    j["schema"] = kSchema;
    j["kind"] = "simulate";
    j["knot"] = k.name;
    j["bridge_index"] = k.bridge;
    j["n_vertices"] = p.n_vertices;
    j["theta_start"] = p.theta_start;
    j["theta_end"] = p.theta_end;
    json stages = json::array();
    for (const auto& s : res.stages) {
        const char* stop = s.stop == elastic::StageStop::GradientTolerance ? "gradient-tolerance"
                           : s.stop == elastic::StageStop::StepCap         ? "step-cap"
                                                                           : "line-search-stall";
        stages.push_back({{"theta", s.theta},
                          {"steps", s.steps},
                          {"stop", stop},
                          {"e_bend", s.final_energy.e_bend},
                          {"e_theta", s.final_energy.e_theta}});
    }
    j["stages"] = stages;
    j["final"] = {{"e_bend", res.final_energy.e_bend},
                  {"total_curvature", res.final_energy.total_curvature},
                  {"ropelength", res.final_energy.ropelength},
                  {"e_theta", res.final_energy.e_theta},
                  {"thickness", res.final_energy.thickness}};
    return j;
}

}  // namespace

void export_curve(const elastic::PolygonalCurve& c, const std::string& path,
                  const std::string& format) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    char buf[96];
    if (format == "csv") {
        for (const auto& v : c.vertices) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", v.x(), v.y(), v.z());
            f << buf;
        }
    } else if (format == "obj") {
        for (const auto& v : c.vertices) {
            std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
            f << buf;
        }
        f << "l";
        for (int i = 1; i <= c.size(); ++i) f << " " << i;
        f << " 1\n";
    } else {
        throw std::invalid_argument("export format must be obj or csv");
    }
}

void batch_classify(std::istream& in, std::ostream& out) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        json j;
        try {
            const auto delta_pos = line.find("delta=");
            if (line.find(',') != std::string::npos || delta_pos != std::string::npos) {
                long long delta = 0;
                std::string tangles = line;
                if (delta_pos != std::string::npos) {
                    delta = parse_int(line.substr(delta_pos + 6), "delta");
                    tangles = line.substr(0, delta_pos);
                }
                const auto space = tangles.find_last_not_of(" \t");
                tangles = tangles.substr(0, space + 1);
                j = montesinos_report(tangles, delta);
            } else {
                const auto [beta, alpha] = parse_fraction(line.substr(first));
                j = two_bridge_report(alpha, beta);
            }
        } catch (const std::exception& e) {
            j = {{"schema", kSchema}, {"kind", "error"}, {"line", lineno}, {"error", e.what()}};
        }
        j["input"] = line;
        out << j.dump() << "\n";
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"bridge/braid index toolkit and elastic-knot simulator"};
    app.require_subcommand(1);

    Output output;
    app.add_flag("--json", output.machine, "print the machine-readable block instead of the table");
    app.add_option("--out", output.out_path, "write the machine-readable block to a file");

    // two-bridge
    auto* tb = app.add_subcommand("two-bridge", "invariants of a 2-bridge link B(alpha, beta)");
    long long tb_alpha = 0, tb_beta = 0;
    tb->add_option("--alpha", tb_alpha, "alpha > beta > 0, coprime")->required();
    tb->add_option("--beta", tb_beta, "")->required();

    // montesinos
    auto* mo = app.add_subcommand("montesinos", "invariants of a Montesinos link");
    std::string mo_tangles;
    long long mo_delta = 0;
    mo->add_option("--tangles", mo_tangles, "comma-separated signed fractions, e.g. 1/2,1/2,-2/3")
        ->required();
    mo->add_option("--delta", mo_delta, "closing half-twist count");

    // census
    auto* ce = app.add_subcommand("census", "alternating 3-braid census");
    int ce_n = 0, ce_from = 0, ce_to = 0, ce_jobs = 0;
    ce->add_option("--n", ce_n, "single crossing number (4..24)");
    ce->add_option("--from", ce_from, "range start");
    ce->add_option("--to", ce_to, "range end");
    ce->add_option("--jobs", ce_jobs, "worker threads (0 = auto)");

    // polyhedron
    auto* po = app.add_subcommand("polyhedron", "basic polyhedron closure (aB)^k");
    int po_k = 0;
    po->add_option("--k", po_k, "k >= 3")->required();

    // conway-algebraic
    auto* ca = app.add_subcommand("conway-algebraic", "bracket family [(a1;b1)(a2;b2)]");
    long long ca_a1 = 0, ca_b1 = 0, ca_a2 = 0, ca_b2 = 0;
    std::string ca_variant = "plain";
    ca->add_option("--a1", ca_a1)->required();
    ca->add_option("--b1", ca_b1)->required();
    ca->add_option("--a2", ca_a2)->required();
    ca->add_option("--b2", ca_b2)->required();
    ca->add_option("--variant", ca_variant,
                   "plain | negated-join | split-b2 | split-a1b1 | split-neg-a1");

    // simulate
    auto* si = app.add_subcommand("simulate", "penalized bending-energy relaxation");
    std::string si_knot, si_config, si_curve_path, si_format = "obj", si_energy_log;
    double si_rho = -1;
    std::optional<int> si_bridge;
    std::optional<std::uint64_t> si_seed;
    int si_bridge_raw = -1;
    std::uint64_t si_seed_raw = 0;
    si->add_option("--knot", si_knot, "trefoil | figure-eight | 8_19 | torus:p,q | braid:WORD")
        ->required();
    si->add_option("--config", si_config, "key = value parameter file");
    si->add_option("--rho", si_rho, "initial tube radius");
    auto* bridge_opt = si->add_option("--bridge", si_bridge_raw, "bridge index for the guards");
    auto* seed_opt = si->add_option("--seed", si_seed_raw, "jitter seed");
    si->add_option("--out-curve", si_curve_path, "write the final curve");
    si->add_option("--format", si_format, "obj | csv");
    si->add_option("--energy-log", si_energy_log, "write the energy trace as CSV");

    // batch-classify
    auto* ba = app.add_subcommand("batch-classify", "classify one spec per input line");
    std::string ba_input;
    ba->add_option("--input", ba_input, "file of two-bridge or Montesinos specs")->required();

    std::vector<std::string> argv = args;
    std::vector<const char*> cargv;
    cargv.push_back("knotbb");
    for (const auto& a : argv) cargv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (tb->parsed()) {
            output.emit(two_bridge_report(tb_alpha, tb_beta), out);
        } else if (mo->parsed()) {
            output.emit(montesinos_report(mo_tangles, mo_delta), out);
        } else if (ce->parsed()) {
            if (ce_n == 0 && (ce_from == 0 || ce_to == 0))
                throw std::invalid_argument("census needs --n or --from/--to");
            std::vector<json> lines;
            if (ce_n != 0) lines.push_back(census_record(braidcensus::census(ce_n, ce_jobs)));
            else
                for (int n = ce_from; n <= ce_to; ++n)
                    lines.push_back(census_record(braidcensus::census(n, ce_jobs)));
            output.emit_lines(lines, out);
        } else if (po->parsed()) {
            output.emit(polyhedron_report(po_k), out);
        } else if (ca->parsed()) {
            output.emit(conway_algebraic_report(ca_a1, ca_b1, ca_a2, ca_b2, ca_variant), out);
        } else if (si->parsed()) {
            elastic::SimParams params;
            if (!si_config.empty()) params = elastic::load_sim_params(si_config);
            if (*seed_opt) si_seed = si_seed_raw;
            if (*bridge_opt) si_bridge = si_bridge_raw;
            if (si_seed) params.seed = *si_seed;
            if (si_rho > 0) params.init_rho = si_rho;
            const auto knot =
                resolve_knot(si_knot, params.init_rho, params.n_vertices, si_bridge);
            const auto init = elastic::braid_torus_init(knot.init);
            const auto res = elastic::minimize(init, params, knot.bridge);
            if (!si_energy_log.empty()) {
                std::ofstream lg(si_energy_log);
                if (!lg) throw std::runtime_error("cannot write " + si_energy_log);
                elastic::write_energy_log(lg, res.trace);
            }
            if (!si_curve_path.empty()) export_curve(res.curve, si_curve_path, si_format);
            output.emit(simulate_report(knot, params, res), out);
        } else if (ba->parsed()) {
            std::ifstream in(ba_input);
            if (!in) throw std::runtime_error("cannot read " + ba_input);
            if (!output.out_path.empty()) {
                std::ofstream f(output.out_path);
                if (!f) throw std::runtime_error("cannot write " + output.out_path);
                batch_classify(in, f);
            } else {
                batch_classify(in, out);
            }
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace knotbb::cli

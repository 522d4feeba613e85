#include "cmvkit/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cmvkit {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<cplx> complex_list_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
    std::vector<cplx> out;
    out.reserve(j.size());
    for (const auto& item : j) out.push_back(complex_from_json(item));
    return out;
}

json complex_list_to_json(const std::vector<cplx>& values) {
    json out = json::array();
    for (cplx v : values) out.push_back(complex_to_json(v));
    return out;
}

}  // namespace

json complex_to_json(cplx value) { return json::array({value.real(), value.imag()}); }

cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument("complex values are two-element arrays [re, im]");
    return cplx(j[0].get<double>(), j[1].get<double>());
}

const char* boundary_name(BoundaryMode boundary) {
    switch (boundary) {
        case BoundaryMode::principal_truncation: return "principal_truncation";
        case BoundaryMode::half_lattice_closed: return "half_lattice_closed";
        case BoundaryMode::periodic_closed: return "periodic_closed";
    }
    throw std::invalid_argument("unknown boundary mode");
}

BoundaryMode boundary_from_name(const std::string& name) {
    if (name == "principal_truncation" || name == "principal")
        return BoundaryMode::principal_truncation;
    if (name == "half_lattice_closed" || name == "closed") return BoundaryMode::half_lattice_closed;
    if (name == "periodic_closed" || name == "periodic") return BoundaryMode::periodic_closed;
    throw std::invalid_argument("unknown boundary mode: " + name);
}

json schedule_to_json(const CoefficientSchedule& s) {
    json out;
    out["lo"] = s.lo();
    out["half_lattice"] = s.is_half_lattice();
    out["alpha"] = complex_list_to_json(s.alphas());
    out["zeta"] = complex_list_to_json(s.zetas());
    return out;
}

CoefficientSchedule schedule_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("schedule JSON must be an object");
    if (!j.contains("alpha")) throw std::invalid_argument("schedule JSON needs an alpha array");
    const int lo = j.value("lo", 0);
    std::vector<cplx> alpha = complex_list_from_json(j.at("alpha"), "alpha");
    std::vector<cplx> zeta;
    if (j.contains("zeta") && !j.at("zeta").is_null())
        zeta = complex_list_from_json(j.at("zeta"), "zeta");
    const bool half = j.value("half_lattice", lo == 0);
    if (half) {
        if (lo != 0) throw std::invalid_argument("half-lattice schedules must start at index 0");
        return CoefficientSchedule::half_lattice(std::move(alpha), std::move(zeta));
    }
    return CoefficientSchedule(lo, std::move(alpha), std::move(zeta));
}

CoefficientSchedule load_schedule(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open schedule file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("unparseable schedule JSON (" + path + "): " + e.what());
    }
    return schedule_from_json(j);
}

json poly_to_json(const ComplexPoly& p) {
    json out;
    out["coeffs"] = complex_list_to_json(p.coeffs());
    return out;
}

ComplexPoly poly_from_json(const json& j) {
    if (!j.is_object() || !j.contains("coeffs"))
        throw std::invalid_argument("polynomial JSON needs a coeffs array");
    return ComplexPoly(complex_list_from_json(j.at("coeffs"), "coeffs"));
}

json matrix_to_json(const BandedUnitary& u) {
    json rows = json::array();
    for (int k = u.lo(); k <= u.hi(); ++k) {
        json row = json::array();
        for (int l = u.lo(); l <= u.hi(); ++l) row.push_back(complex_to_json(u.at(k, l)));
        rows.push_back(std::move(row));
    }
    json out;
    out["lo"] = u.lo();
    out["size"] = u.size();
    out["boundary"] = boundary_name(u.boundary());
    out["entries"] = std::move(rows);
    return out;
}

json opuc_pairs_to_json(const std::vector<PolyPair>& pairs, const std::string& variant) {
    json list = json::array();
    for (const PolyPair& pair : pairs) {
        json item;
        item["n"] = pair.n;
        item["phi"] = complex_list_to_json(pair.p.coeffs());
        item["phi_star"] = complex_list_to_json(pair.p_star.coeffs());
        list.push_back(std::move(item));
    }
    json out;
    out["variant"] = variant;
    out["pairs"] = std::move(list);
    return out;
}

json conjugators_to_json(const Conjugators& c) {
    json out;
    out["lo"] = c.lo;
    json r = json::array();
    json q = json::array();
    for (Eigen::Index i = 0; i < c.r.size(); ++i) {
        r.push_back(complex_to_json(c.r(i)));
        q.push_back(complex_to_json(c.q(i)));
    }
    out["r"] = std::move(r);
    out["q"] = std::move(q);
    return out;
}

json evolve_to_json(const EvolveResult& r, int lo, int record_stride) {
    json out;
    out["lo"] = lo;
    out["record_stride"] = record_stride;
    out["norms"] = r.norms;
    out["probabilities"] = r.probabilities;
    json final_state = json::array();
    for (Eigen::Index i = 0; i < r.final_state.size(); ++i)
        final_state.push_back(complex_to_json(r.final_state(i)));
    out["final_state"] = std::move(final_state);
    return out;
}

json moments_to_json(const Moments& m) {
    std::vector<cplx> values;
    values.reserve(static_cast<std::size_t>(m.max_order()) + 1);
    for (int k = 0; k <= m.max_order(); ++k) values.push_back(m.at(k));
    json out;
    out["moments"] = complex_list_to_json(values);
    return out;
}

json states_to_json(const std::vector<GZState>& states) {
    json list = json::array();
    for (const GZState& s : states) {
        json item;
        item["n"] = s.n;
        item["f"] = complex_to_json(s.f);
        item["g"] = complex_to_json(s.g);
        list.push_back(std::move(item));
    }
    json out;
    out["states"] = std::move(list);
    return out;
}

json neighbor_table_to_json(const NeighborTable& t) {
    json families = json::array();
    for (SeedFamily fam : {SeedFamily::f_plus, SeedFamily::p_plus, SeedFamily::f_minus,
                           SeedFamily::p_minus}) {
        const std::size_t i = static_cast<std::size_t>(seed_family_index(fam));
        json item;
        item["family"] = seed_family_name(fam);
        item["at_prev"] = json{{"n", t.at_prev[i].n},
                               {"f", complex_to_json(t.at_prev[i].f)},
                               {"g", complex_to_json(t.at_prev[i].g)}};
        item["at_next"] = json{{"n", t.at_next[i].n},
                               {"f", complex_to_json(t.at_next[i].f)},
                               {"g", complex_to_json(t.at_next[i].g)}};
        families.push_back(std::move(item));
    }
    json out;
    out["K"] = t.K;
    out["families"] = std::move(families);
    return out;
}

json equivalence_to_json(const EquivalenceReport& r) {
    json out;
    out["window_lo"] = r.window_lo;
    out["window_hi"] = r.window_hi;
    out["block_residual"] = r.block_residual;
    out["recursion_residual"] = r.recursion_residual;
    out["tolerance"] = r.tolerance;
    out["block_pass"] = r.block_pass;
    out["recursion_pass"] = r.recursion_pass;
    return out;
}

json weyl_to_json(const WeylSample& w) {
    json out;
    out["z"] = complex_to_json(w.z);
    out["r"] = complex_to_json(w.r);
    out["verdict"] = verdict_name(w.verdict);
    out["partial_sums"] = w.partial_sums;
    return out;
}

json rotation_report_to_json(const RotationReport& r) {
    json out;
    out["max_abs_diff"] = r.max_abs_diff;
    out["pass"] = r.pass;
    out["rotated_sums"] = r.rotated_sums;
    out["standard_sums"] = r.standard_sums;
    return out;
}

std::string states_to_csv(const std::vector<GZState>& states) {
    std::string out = "n,re_f,im_f,re_g,im_g\n";
    for (const GZState& s : states)
        out += std::to_string(s.n) + "," + fmt(s.f.real()) + "," + fmt(s.f.imag()) + "," +
               fmt(s.g.real()) + "," + fmt(s.g.imag()) + "\n";
    return out;
}

std::string neighbor_table_to_csv(const NeighborTable& t) {
    std::string out = "family,n,re_f,im_f,re_g,im_g\n";
    auto row = [&](SeedFamily fam, const GZState& s) {
        out += std::string(seed_family_name(fam)) + "," + std::to_string(s.n) + "," +
               fmt(s.f.real()) + "," + fmt(s.f.imag()) + "," + fmt(s.g.real()) + "," +
               fmt(s.g.imag()) + "\n";
    };
    for (SeedFamily fam : {SeedFamily::f_plus, SeedFamily::p_plus, SeedFamily::f_minus,
                           SeedFamily::p_minus}) {
        const std::size_t i = static_cast<std::size_t>(seed_family_index(fam));
        row(fam, t.at_prev[i]);
        row(fam, t.at_next[i]);
    }
    return out;
}

std::string matrix_to_csv(const BandedUnitary& u) {
    std::string out = "row,col,re,im\n";
    for (int k = u.lo(); k <= u.hi(); ++k)
        for (int l = u.lo(); l <= u.hi(); ++l) {
            const cplx v = u.at(k, l);
            out += std::to_string(k) + "," + std::to_string(l) + "," + fmt(v.real()) + "," +
                   fmt(v.imag()) + "\n";
        }
    return out;
}

std::string moments_to_csv(const Moments& m) {
    std::string out = "k,re,im\n";
    for (int k = 0; k <= m.max_order(); ++k) {
        const cplx v = m.at(k);
        out += std::to_string(k) + "," + fmt(v.real()) + "," + fmt(v.imag()) + "\n";
    }
    return out;
}

std::string evolve_to_csv(const EvolveResult& r, int lo, int record_stride) {
    if (r.probabilities.empty()) return "step,norm\n";
    std::string out = "step,norm";
    const std::size_t width = r.probabilities.front().size();
    for (std::size_t k = 0; k < width; ++k)
        out += ",p_" + std::to_string(lo + static_cast<int>(k));
    out += "\n";
    for (std::size_t i = 0; i < r.probabilities.size(); ++i) {
        const std::size_t step = i * static_cast<std::size_t>(record_stride);
        out += std::to_string(step) + "," + fmt(r.norms[step]);
        for (double p : r.probabilities[i]) out += "," + fmt(p);
        out += "\n";
    }
    return out;
}

std::string opuc_pairs_to_csv(const std::vector<PolyPair>& pairs) {
    std::string out = "n,kind,power,re,im\n";
    for (const PolyPair& pair : pairs) {
        auto rows = [&](const char* kind, const ComplexPoly& p) {
            for (int j = 0; j <= std::max(0, p.degree()); ++j) {
                const cplx c = p.coeff(j);
                out += std::to_string(pair.n) + "," + kind + "," + std::to_string(j) + "," +
                       fmt(c.real()) + "," + fmt(c.imag()) + "\n";
            }
        };
        rows("phi", pair.p);
        rows("phi_star", pair.p_star);
    }
    return out;
}

}  // namespace cmvkit

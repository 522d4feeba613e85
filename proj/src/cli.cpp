#include "cmvkit/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cmvkit/cmv.hpp"
#include "cmvkit/gz.hpp"
#include "cmvkit/json_io.hpp"
#include "cmvkit/measure.hpp"
#include "cmvkit/opuc.hpp"
#include "cmvkit/schedule.hpp"
#include "cmvkit/weyl.hpp"

namespace cmvkit {

namespace {

int count_sources(const RunConfig& c) {
    return (c.schedule_path.empty() ? 0 : 1) + (c.measure_name.empty() ? 0 : 1) +
           (c.random_count > 0 ? 1 : 0);
}

CoefficientSchedule random_schedule(int count, std::uint64_t seed,
                                    std::optional<double> zeta_angle) {
    if (count < 1) throw std::invalid_argument("--random needs a positive count");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<cplx> alpha;
    std::vector<cplx> zeta;
    for (int i = 0; i < count; ++i) {
        double re = 0.0, im = 0.0;
        do {
            re = 1.9 * unit(rng) - 0.95;
            im = 1.9 * unit(rng) - 0.95;
        } while (re * re + im * im > 0.95 * 0.95);
        alpha.emplace_back(re, im);
        const double angle = zeta_angle ? *zeta_angle : 2.0 * pi * unit(rng);
        zeta.push_back(std::polar(1.0, angle));
    }
    return CoefficientSchedule::half_lattice(std::move(alpha), std::move(zeta));
}

// Build the working schedule from the configured source; needed is the
// coefficient count when the source is a measure or random generator.
CoefficientSchedule resolve_schedule(const RunConfig& c, int needed) {
    if (count_sources(c) != 1)
        throw std::invalid_argument(
            "exactly one input source required: --schedule, --measure, or --random");
    if (!c.schedule_path.empty()) {
        CoefficientSchedule s = load_schedule(c.schedule_path);
        if (c.zeta_const_angle) {
            std::vector<cplx> zeta(s.alphas().size(), std::polar(1.0, *c.zeta_const_angle));
            return s.is_half_lattice()
                       ? CoefficientSchedule::half_lattice(s.alphas(), std::move(zeta))
                       : CoefficientSchedule(s.lo(), s.alphas(), std::move(zeta));
        }
        return s;
    }
    if (c.random_count > 0) return random_schedule(c.random_count, c.seed, c.zeta_const_angle);
    const MeasureSpec m = MeasureSpec::builtin(c.measure_name);
    std::vector<cplx> alpha = m.closed_form_coefficients(needed);
    std::vector<cplx> zeta;
    if (c.zeta_const_angle) zeta.assign(alpha.size(), std::polar(1.0, *c.zeta_const_angle));
    return CoefficientSchedule::half_lattice(std::move(alpha), std::move(zeta));
}

MeasureSpec resolve_measure(const RunConfig& c) {
    if (count_sources(c) != 1)
        throw std::invalid_argument(
            "exactly one input source required: --schedule, --measure, or --random");
    if (!c.measure_name.empty()) return MeasureSpec::builtin(c.measure_name);
    if (!c.schedule_path.empty())
        return MeasureSpec::from_coefficients(load_schedule(c.schedule_path));
    throw std::invalid_argument("this action needs --measure or --schedule");
}

int default_n(const RunConfig& c) {
    if (c.command == "measure") return c.action == "verblunsky" ? 9 : 8;
    if (c.command == "weyl") return 256;
    return 6;
}

std::string default_format(const RunConfig& c) {
    if (c.command == "gz" && c.action != "verify") return "csv";
    return "json";
}

cplx require_z(const RunConfig& c) {
    if (!c.have_z) throw std::invalid_argument("this action needs --z RE,IM");
    return c.z;
}

cplx require_r(const RunConfig& c) {
    if (!c.have_r) throw std::invalid_argument("this action needs --r RE,IM");
    return c.r;
}

int require_opt(const std::optional<int>& v, const char* what) {
    if (!v) throw std::invalid_argument(std::string("this action needs ") + what);
    return *v;
}

SeedFamily family_from_name(const std::string& name) {
    if (name == "f+") return SeedFamily::f_plus;
    if (name == "p+") return SeedFamily::p_plus;
    if (name == "f-") return SeedFamily::f_minus;
    if (name == "p-") return SeedFamily::p_minus;
    throw std::invalid_argument("unknown seed family: " + name + " (use f+, p+, f-, p-)");
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

std::pair<int, int> resolve_window(const RunConfig& c, const CoefficientSchedule& s, int n) {
    if (c.lo || c.hi) {
        if (!c.lo || !c.hi) throw std::invalid_argument("--lo and --hi go together");
        return {*c.lo, *c.hi};
    }
    return {s.lo(), s.lo() + n - 1};
}

void do_measure(const RunConfig& c, std::ostream& out, const std::string& format, int n) {
    if (c.action == "moments") {
        const MeasureSpec m = resolve_measure(c);
        const Moments mom = moments(m, n, c.nodes);
        if (format == "csv")
            out << moments_to_csv(mom);
        else
            emit(out, moments_to_json(mom));
        return;
    }
    if (c.action == "verblunsky") {
        if (c.measure_name.empty())
            throw std::invalid_argument("verblunsky extraction needs --measure");
        const MeasureSpec m = MeasureSpec::builtin(c.measure_name);
        const std::vector<cplx> alpha = verblunsky_from_measure(m, n, c.nodes);
        const CoefficientSchedule s = CoefficientSchedule::half_lattice(alpha);
        if (format == "csv") {
            std::string text = "k,re,im\n";
            char buf[96];
            for (std::size_t k = 0; k < alpha.size(); ++k) {
                std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", k, alpha[k].real(),
                              alpha[k].imag());
                text += buf;
            }
            out << text;
        } else {
            emit(out, schedule_to_json(s));
        }
        return;
    }
    throw std::invalid_argument("unknown measure action: " + c.action);
}

void do_opuc(const RunConfig& c, std::ostream& out, const std::string& format, int n) {
    if (c.action != "sequence") throw std::invalid_argument("unknown opuc action: " + c.action);
    const CoefficientSchedule s = resolve_schedule(c, n);
    SzegoVariant variant = SzegoVariant::standard;
    const char* name = "standard";
    if (c.rotated && c.second_kind) {
        variant = SzegoVariant::rotated_second_kind;
        name = "rotated_second_kind";
    } else if (c.rotated) {
        variant = SzegoVariant::rotated;
        name = "rotated";
    } else if (c.second_kind) {
        variant = SzegoVariant::second_kind;
        name = "second_kind";
    }
    const std::vector<PolyPair> pairs = opuc_sequence(s, n, variant);
    if (format == "csv")
        out << opuc_pairs_to_csv(pairs);
    else
        emit(out, opuc_pairs_to_json(pairs, name));
}

void do_cmv(const RunConfig& c, std::ostream& out, const std::string& format, int n) {
    const int needed = c.hi ? *c.hi + 1 : n;
    const CoefficientSchedule s = resolve_schedule(c, needed);
    const auto [lo, hi] = resolve_window(c, s, n);
    const std::string boundary_text =
        c.boundary.empty() ? (c.action == "evolve" ? "periodic_closed" : "principal_truncation")
                           : c.boundary;
    const BoundaryMode boundary = boundary_from_name(boundary_text);

    if (c.action == "build") {
        const BandedUnitary u = build_cmv(s, lo, hi, c.alternate, c.rotated, boundary);
        if (format == "csv")
            out << matrix_to_csv(u);
        else
            emit(out, matrix_to_json(u));
        return;
    }
    if (c.action == "factorize") {
        if (format == "csv") throw std::invalid_argument("factorize emits JSON only");
        const FactorParity first =
            c.alternate ? FactorParity::odd_blocks : FactorParity::even_blocks;
        const FactorParity second =
            c.alternate ? FactorParity::even_blocks : FactorParity::odd_blocks;
        json j;
        j["left"] = matrix_to_json(build_factor(s, lo, hi, first, c.rotated, boundary));
        j["right"] = matrix_to_json(build_factor(s, lo, hi, second, c.rotated, boundary));
        emit(out, j);
        return;
    }
    if (c.action == "conjugate") {
        if (format == "csv") throw std::invalid_argument("conjugate emits JSON only");
        const BandedUnitary rot = build_cmv(s, lo, hi, c.alternate, true, boundary);
        const BandedUnitary plain = build_cmv(s, lo, hi, c.alternate, false, boundary);
        const BandedUnitary rot_alt = build_cmv(s, lo, hi, !c.alternate, true, boundary);
        const Conjugators cj = conjugators(s, lo, hi);
        const int width = hi - lo + 1;
        Eigen::MatrixXcd by_r(width, width), by_q(width, width);
        for (int a = 0; a < width; ++a)
            for (int b = 0; b < width; ++b) {
                by_r(a, b) = cj.r(a) * rot.dense()(a, b) * std::conj(cj.r(b));
                by_q(a, b) = cj.q(a) * rot_alt.dense()(a, b) * std::conj(cj.q(b));
            }
        json j;
        j["conjugators"] = conjugators_to_json(cj);
        j["r_residual"] = (by_r - plain.dense()).norm();
        j["q_residual"] = (rot.dense().transpose() - by_q).norm();
        emit(out, j);
        return;
    }
    if (c.action == "split") {
        if (format == "csv") throw std::invalid_argument("split emits JSON only");
        const SplitResult split = split_at(s, c.k_index, c.alternate, c.rotated);
        const BandedUnitary full = build_cmv(s, s.lo() + 1, s.hi(), c.alternate, c.rotated,
                                             BoundaryMode::principal_truncation);
        double leakage = 0.0;
        for (int k = split.left.lo(); k <= split.left.hi(); ++k)
            for (int l = split.right.lo(); l <= split.right.hi(); ++l)
                leakage = std::max({leakage, std::abs(full.at(k, l)), std::abs(full.at(l, k))});
        json j;
        j["left"] = matrix_to_json(split.left);
        j["right"] = matrix_to_json(split.right);
        j["leakage"] = leakage;
        emit(out, j);
        return;
    }
    if (c.action == "evolve") {
        const BandedUnitary u = build_cmv(s, lo, hi, c.alternate, c.rotated, boundary);
        const int impulse = c.impulse ? *c.impulse : (lo + hi) / 2;
        if (impulse < lo || impulse > hi)
            throw std::invalid_argument("--impulse index outside the window");
        Eigen::VectorXcd v0 = Eigen::VectorXcd::Zero(u.size());
        v0(impulse - lo) = 1.0;
        const EvolveResult result = evolve(u, v0, c.steps, c.stride);
        if (format == "csv")
            out << evolve_to_csv(result, lo, c.stride);
        else
            emit(out, evolve_to_json(result, lo, c.stride));
        return;
    }
    throw std::invalid_argument("unknown cmv action: " + c.action);
}

void do_gz(const RunConfig& c, std::ostream& out, const std::string& format) {
    const cplx z = require_z(c);
    if (c.action == "propagate") {
        const int lo = require_opt(c.lo, "--lo");
        const int hi = require_opt(c.hi, "--hi");
        const CoefficientSchedule s = resolve_schedule(c, hi + 1);
        Direction dir = Direction::rightward;
        if (c.direction == "leftward")
            dir = Direction::leftward;
        else if (c.direction != "rightward")
            throw std::invalid_argument("--direction must be rightward or leftward");
        GZState init;
        if (c.seed_f || c.seed_g || c.seed_index) {
            if (!c.seed_f || !c.seed_g || !c.seed_index)
                throw std::invalid_argument("--seed-f, --seed-g, --seed-index go together");
            init = GZState{*c.seed_f, *c.seed_g, *c.seed_index};
        } else {
            const int K = dir == Direction::rightward ? lo : hi;
            init = half_lattice_seeds(K, family_from_name(c.seed_family), z);
        }
        const std::vector<GZState> states = propagate(s, init, lo, hi, z, dir);
        if (format == "csv")
            out << states_to_csv(states);
        else
            emit(out, states_to_json(states));
        return;
    }
    if (c.action == "table") {
        const CoefficientSchedule s = resolve_schedule(c, c.k_index + 2);
        const NeighborTable table = neighbor_table(s, c.k_index, z);
        if (format == "csv")
            out << neighbor_table_to_csv(table);
        else
            emit(out, neighbor_table_to_json(table));
        return;
    }
    if (c.action == "verify") {
        const int lo = require_opt(c.lo, "--lo");
        const int hi = require_opt(c.hi, "--hi");
        const CoefficientSchedule s = resolve_schedule(c, hi + 2);
        const GZState init = half_lattice_seeds(lo - 1, family_from_name(c.seed_family), z);
        const std::vector<GZState> states =
            propagate(s, init, lo - 1, hi + 1, z, Direction::rightward);
        PairSequence seq = to_pair_sequence(states);
        if (c.perturb != 0.0)
            seq.f[static_cast<std::size_t>((lo + hi) / 2 - seq.lo)] += c.perturb;
        const EquivalenceReport report = verify_equivalence(s, seq, z, lo, hi);
        emit(out, equivalence_to_json(report));
        if (!report.block_pass || !report.recursion_pass)
            throw ToleranceBreach("equivalence verification",
                                  std::max(report.block_residual, report.recursion_residual),
                                  report.tolerance);
        return;
    }
    throw std::invalid_argument("unknown gz action: " + c.action);
}

void do_weyl(const RunConfig& c, std::ostream& out, const std::string& format, int n) {
    if (format == "csv") throw std::invalid_argument("weyl actions emit JSON only");
    if (c.action == "caratheodory") {
        const cplx z = require_z(c);
        const MeasureSpec m = resolve_measure(c);
        json j;
        j["z"] = complex_to_json(z);
        j["F"] = complex_to_json(caratheodory(m, z));
        emit(out, j);
        return;
    }
    if (c.action == "classify") {
        const cplx z = require_z(c);
        const cplx r = require_r(c);
        const CoefficientSchedule s = resolve_schedule(c, n);
        emit(out, weyl_to_json(weyl_residual(s, z, r, n)));
        return;
    }
    if (c.action == "rotation") {
        const cplx z = require_z(c);
        const cplx r = require_r(c);
        const CoefficientSchedule s = resolve_schedule(c, n);
        emit(out, rotation_report_to_json(rotation_invariance_check(s, z, r, n)));
        return;
    }
    throw std::invalid_argument("unknown weyl action: " + c.action);
}

}  // namespace

cplx parse_complex(const std::string& text) {
    const char* p = text.c_str();
    char* end = nullptr;
    const double re = std::strtod(p, &end);
    if (end == p) throw std::invalid_argument("bad complex value: " + text);
    if (*end == '\0') return cplx(re, 0.0);
    if (*end != ',') throw std::invalid_argument("bad complex value: " + text);
    const char* q = end + 1;
    const double im = std::strtod(q, &end);
    if (end == q || *end != '\0') throw std::invalid_argument("bad complex value: " + text);
    return cplx(re, im);
}

double parse_zeta_angle(const std::string& text) {
    const char* p = text.c_str();
    char* end = nullptr;
    const double x = std::strtod(p, &end);
    if (end == p || std::string(end) != "pi")
        throw std::invalid_argument("bad --zeta-const value (expected Xpi, e.g. 0.25pi): " + text);
    return x * pi;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const std::string format =
            config.format.empty() ? default_format(config) : config.format;
        if (format != "json" && format != "csv")
            throw std::invalid_argument("--format must be json or csv");
        const int n = config.n >= 0 ? config.n : default_n(config);

        if (config.command == "measure")
            do_measure(config, out, format, n);
        else if (config.command == "opuc")
            do_opuc(config, out, format, n);
        else if (config.command == "cmv")
            do_cmv(config, out, format, n);
        else if (config.command == "gz")
            do_gz(config, out, format);
        else if (config.command == "weyl")
            do_weyl(config, out, format, n);
        else
            throw std::invalid_argument("unknown command: " + config.command);
        return 0;
    } catch (const ToleranceBreach& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    CLI::App app{"CMV operator toolkit: coefficient schedules, operator windows, "
                 "transfer matrices, and Weyl classification"};
    app.require_subcommand(1);

    auto add_source = [&](CLI::App* sub) {
        sub->add_option("--schedule", config.schedule_path, "schedule JSON file");
        sub->add_option("--measure", config.measure_name,
                        "builtin measure: lebesgue, geronimus_mu, geronimus_nu");
        sub->add_option("--random", config.random_count, "generate a random schedule this long");
        sub->add_option("--seed", config.seed, "random generator seed (default 12345)");
        sub->add_option_function<std::string>(
            "--zeta-const",
            [&](const std::string& v) { config.zeta_const_angle = parse_zeta_angle(v); },
            "constant phase Xpi for every zeta_n, e.g. 0.25pi");
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", config.format, "json or csv");
        sub->add_option("--out", config.out_path, "write output to this file");
    };
    auto add_n = [&](CLI::App* sub, const char* help) {
        sub->add_option("--n", config.n, help);
    };
    auto add_z = [&](CLI::App* sub) {
        sub->add_option_function<std::string>(
            "--z",
            [&](const std::string& v) {
                config.z = parse_complex(v);
                config.have_z = true;
            },
            "spectral parameter RE,IM");
    };
    auto add_r = [&](CLI::App* sub) {
        sub->add_option_function<std::string>(
            "--r",
            [&](const std::string& v) {
                config.r = parse_complex(v);
                config.have_r = true;
            },
            "trial Weyl value RE,IM");
    };
    auto add_window = [&](CLI::App* sub) {
        sub->add_option_function<int>("--lo", [&](int v) { config.lo = v; }, "window bottom index");
        sub->add_option_function<int>("--hi", [&](int v) { config.hi = v; }, "window top index");
    };
    auto name_action = [&](CLI::App* sub, const char* command, const char* action) {
        sub->callback([&config, command, action] {
            config.command = command;
            config.action = action;
        });
    };

    CLI::App* measure = app.add_subcommand("measure", "moment and coefficient extraction");
    measure->require_subcommand(1);
    {
        CLI::App* sub = measure->add_subcommand("moments", "trigonometric moments of a measure");
        name_action(sub, "measure", "moments");
        add_source(sub);
        add_output(sub);
        add_n(sub, "highest moment order (default 8)");
        sub->add_option("--nodes", config.nodes, "quadrature node count");
    }
    {
        CLI::App* sub = measure->add_subcommand(
            "verblunsky", "recurrence coefficients extracted from quadrature moments");
        name_action(sub, "measure", "verblunsky");
        add_source(sub);
        add_output(sub);
        add_n(sub, "number of coefficients (default 9)");
        sub->add_option("--nodes", config.nodes, "quadrature node count (default 512)");
    }

    CLI::App* opuc = app.add_subcommand("opuc", "orthogonal polynomial sequences");
    opuc->require_subcommand(1);
    {
        CLI::App* sub = opuc->add_subcommand("sequence", "polynomial pairs from the recursion");
        name_action(sub, "opuc", "sequence");
        add_source(sub);
        add_output(sub);
        add_n(sub, "highest degree (default 6)");
        sub->add_flag("--rotated", config.rotated, "use the phase-carrying recursion");
        sub->add_flag("--second-kind", config.second_kind, "flip coefficient signs");
    }

    CLI::App* cmv = app.add_subcommand("cmv", "operator windows and factorizations");
    cmv->require_subcommand(1);
    auto add_cmv_common = [&](CLI::App* sub) {
        add_source(sub);
        add_output(sub);
        add_n(sub, "window size from the schedule start (default 6)");
        add_window(sub);
        sub->add_flag("--rotated", config.rotated, "build the phase-carrying operator");
        sub->add_flag("--alternate", config.alternate, "swap the factor order");
        sub->add_option("--boundary", config.boundary,
                        "principal_truncation | half_lattice_closed | periodic_closed");
    };
    {
        CLI::App* sub = cmv->add_subcommand("build", "assemble the operator window");
        name_action(sub, "cmv", "build");
        add_cmv_common(sub);
    }
    {
        CLI::App* sub = cmv->add_subcommand("factorize", "emit the two direct-sum factors");
        name_action(sub, "cmv", "factorize");
        add_cmv_common(sub);
    }
    {
        CLI::App* sub = cmv->add_subcommand(
            "conjugate", "diagonal conjugations to the phase-free and transposed forms");
        name_action(sub, "cmv", "conjugate");
        add_cmv_common(sub);
    }
    {
        CLI::App* sub = cmv->add_subcommand("split", "decouple at a unimodular coefficient");
        name_action(sub, "cmv", "split");
        add_cmv_common(sub);
        sub->add_option("--k", config.k_index, "split index (|alpha_k| = 1)");
    }
    {
        CLI::App* sub = cmv->add_subcommand("evolve", "repeated application to a basis state");
        name_action(sub, "cmv", "evolve");
        add_cmv_common(sub);
        sub->add_option("--steps", config.steps, "number of applications");
        sub->add_option("--stride", config.stride, "record probabilities every this many steps");
        sub->add_option_function<int>(
            "--impulse", [&](int v) { config.impulse = v; },
            "start from the basis vector at this index (default window middle)");
    }

    CLI::App* gz = app.add_subcommand("gz", "transfer-matrix propagation and verification");
    gz->require_subcommand(1);
    {
        CLI::App* sub = gz->add_subcommand("propagate", "push a state across an index range");
        name_action(sub, "gz", "propagate");
        add_source(sub);
        add_output(sub);
        add_z(sub);
        add_window(sub);
        sub->add_option("--direction", config.direction, "rightward (default) or leftward");
        sub->add_option("--seed-family", config.seed_family,
                        "boundary seed family: f+, p+, f-, p- (default f+)");
        sub->add_option_function<std::string>(
            "--seed-f", [&](const std::string& v) { config.seed_f = parse_complex(v); },
            "explicit seed f value RE,IM");
        sub->add_option_function<std::string>(
            "--seed-g", [&](const std::string& v) { config.seed_g = parse_complex(v); },
            "explicit seed g value RE,IM");
        sub->add_option_function<int>(
            "--seed-index", [&](int v) { config.seed_index = v; },
            "index of the explicit seed (range bottom or top)");
    }
    {
        CLI::App* sub = gz->add_subcommand("table", "seed states pushed one step either side");
        name_action(sub, "gz", "table");
        add_source(sub);
        add_output(sub);
        add_z(sub);
        sub->add_option("--k", config.k_index, "boundary index K");
    }
    {
        CLI::App* sub = gz->add_subcommand("verify", "block equations vs transfer recursion");
        name_action(sub, "gz", "verify");
        add_source(sub);
        add_output(sub);
        add_z(sub);
        add_window(sub);
        sub->add_option("--seed-family", config.seed_family,
                        "seed family for the generated sequence (default f+)");
        sub->add_option("--perturb", config.perturb,
                        "corrupt one f entry by this amount before verifying");
    }

    CLI::App* weyl = app.add_subcommand("weyl", "Caratheodory values and l2 classification");
    weyl->require_subcommand(1);
    {
        CLI::App* sub = weyl->add_subcommand("classify", "partial sums and verdict for (z, r)");
        name_action(sub, "weyl", "classify");
        add_source(sub);
        add_output(sub);
        add_z(sub);
        add_r(sub);
        add_n(sub, "number of terms (default 256, max 1024)");
    }
    {
        CLI::App* sub = weyl->add_subcommand("caratheodory", "transform value at z");
        name_action(sub, "weyl", "caratheodory");
        add_source(sub);
        add_output(sub);
        add_z(sub);
    }
    {
        CLI::App* sub = weyl->add_subcommand("rotation", "phase invariance of the partial sums");
        name_action(sub, "weyl", "rotation");
        add_source(sub);
        add_output(sub);
        add_z(sub);
        add_r(sub);
        add_n(sub, "number of terms (default 256, max 1024)");
    }

    std::vector<std::string> argv_store = args;
    std::vector<char*> argv;
    argv.reserve(argv_store.size() + 1);
    static char prog[] = "cmvkit";
    argv.push_back(prog);
    for (std::string& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        // Option callbacks (--z, --zeta-const, ...) throw on malformed values.
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (!config.out_path.empty()) {
        std::ofstream file(config.out_path);
        if (!file) {
            err << "error: cannot open output file: " << config.out_path << "\n";
            return 1;
        }
        return run(config, file, err);
    }
    return run(config, out, err);
}

}  // namespace cmvkit

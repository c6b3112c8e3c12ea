#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "npk/io.hpp"
#include "npk/svg.hpp"

using namespace npk;
using io::json;

namespace {

struct Global {
    long bits = 128;
    long max_bits = 4096;
    std::string backend = "auto";
    std::string out_dir = ".";
    bool emit_svg = false;
};

PrecisionContext make_ctx(const Global& g) {
    PrecisionContext c;
    c.bits = g.bits;
    c.max_bits = std::max(g.bits, g.max_bits);
    return c;
}

Backend parse_backend(const std::string& s) {
    if (s == "auto") return Backend::Auto;
    if (s == "exact") return Backend::Exact;
    if (s == "interval") return Backend::Interval;
    throw InvalidParameter("unknown backend: " + s);
}

// "p/q" preferred; decimals are rounded to the nearest dyadic at the working
// precision, with a warning, so every downstream computation stays exact.
Rational parse_q(const std::string& s, long bits) {
    Rational q = Rational::parse(s);
    bool decimal = s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
                   s.find('E') != std::string::npos;
    if (decimal && !q.is_dyadic()) {
        Rational d = MpF::from_rational(q, static_cast<mpfr_prec_t>(bits), MPFR_RNDN).to_rational();
        std::cerr << "warning: decimal input " << s << " converted to exact dyadic "
                  << d.to_string() << "\n";
        return d;
    }
    return q;
}

std::string path_in(const Global& g, const std::string& name) {
    return g.out_dir + "/" + name;
}

void write_manifest(const Global& g, const std::string& cmd,
                    const std::vector<std::string>& argv) {
    json m = io::manifest(argv);
    m["bits"] = g.bits;
    m["max_bits"] = g.max_bits;
    m["backend"] = g.backend;
    io::write_text(path_in(g, cmd + "-manifest.json"), m.dump(2) + "\n");
}

const char* tag_name(RegularityVerdict::Tag t) {
    switch (t) {
        case RegularityVerdict::Tag::RegularEvidence: return "regular-evidence";
        case RegularityVerdict::Tag::SingularEvidence: return "singular-evidence";
        default: return "inconclusive";
    }
}

json verdict_json(const RegularityVerdict& v) {
    json j;
    j["tag"] = tag_name(v.tag);
    j["floor_or_decay"] = json{{"lo", io::decimal(v.floor_or_decay.lo())},
                               {"hi", io::decimal(v.floor_or_decay.hi())}};
    j["rationale"] = v.rationale;
    j["window"] = v.window;
    return j;
}

NodeSequence load_nodes(const std::string& path, const PrecisionContext& ctx) {
    NodeSequence seq = io::nodes_from_json(json::parse(io::read_text(path)), ctx);
    auto violations = validate(seq, ctx);
    if (!violations.empty()) throw InvalidParameter("node file invalid: " + violations[0].to_string());
    return seq;
}

int run(const std::vector<std::string>& args);

// ---- nodes ----------------------------------------------------------------

void cmd_nodes(const Global& g, const std::string& family, const std::string& p_str,
               const std::string& r_str, long count, const std::vector<std::string>& point_strs,
               std::string output) {
    PrecisionContext ctx = make_ctx(g);
    NodeSequence seq;
    if (family == "radial") {
        seq = gen_radial_power(parse_q(p_str, g.bits), count, ctx);
    } else if (family == "geometric") {
        seq = gen_geometric(parse_q(r_str, g.bits), count, ctx);
    } else if (family == "explicit") {
        std::vector<NodePoint> pts;
        for (const auto& s : point_strs) {
            auto comma = s.find(',');
            Rational re = parse_q(s.substr(0, comma), g.bits);
            Rational im = comma == std::string::npos ? Rational(0)
                                                     : parse_q(s.substr(comma + 1), g.bits);
            pts.push_back(NodePoint::from_rational(re, im, g.bits));
        }
        seq = make_explicit(std::move(pts));
    } else {
        throw InvalidParameter("unknown family: " + family);
    }
    auto violations = validate(seq, ctx);
    if (!violations.empty()) {
        std::string msg = "node sequence invalid:";
        for (const auto& v : violations) msg += " " + v.to_string();
        throw InvalidParameter(msg);
    }
    if (output.empty()) output = path_in(g, "nodes.json");
    io::write_text(output, io::to_json(seq).dump(2) + "\n");
    std::cout << "wrote " << output << " (" << seq.size() << " nodes)\n";
}

// ---- lambda0 ---------------------------------------------------------------

int cmd_lambda0(const Global& g, const std::string& kernel, const std::string& input, long nmax,
                const std::string& rel_tol_str, std::string prefix) {
    PrecisionContext ctx = make_ctx(g);
    Backend be = parse_backend(g.backend);
    Rational rel_tol = parse_q(rel_tol_str, g.bits);
    MatrixFamily family;
    if (kernel == "pick") {
        NodeSequence seq = load_nodes(input, ctx);
        if (static_cast<size_t>(nmax + 1) > seq.size())
            throw InvalidParameter("nmax exceeds node count");
        family = [seq](long n) { return pick_matrix(seq, n); };
    } else if (kernel == "hankel") {
        MomentSequence m = io::moments_from_json(json::parse(io::read_text(input)));
        if (2 * nmax > m.count - 1) throw InvalidParameter("nmax exceeds moment count");
        family = [m](long n) { return hankel_matrix(m, n); };
    } else {
        throw InvalidParameter("unknown kernel: " + kernel);
    }

    Trajectory traj;
    int code = 0;
    try {
        for (long n = 0; n <= nmax; ++n) {
            TrajectoryRecord rec;
            rec.n = n;
            rec.lambda0 = eigenvalue(family(n), 0, rel_tol, ctx, be);
            if (!traj.records.empty()) {
                const Enclosure& prev = traj.records.back().lambda0.value;
                if (rec.lambda0.value.lo() > prev.hi())
                    throw InvariantViolation("lambda0 certified to increase at n=" +
                                             std::to_string(n));
            }
            traj.records.push_back(std::move(rec));
        }
    } catch (const EscalationExhausted& e) {
        std::cerr << "precision exhausted, keeping " << traj.records.size()
                  << " completed rows: " << e.what() << "\n";
        code = 3;
    }
    if (prefix.empty()) prefix = path_in(g, "lambda0");
    io::write_text(prefix + ".csv", io::to_csv(traj));
    io::write_text(prefix + ".json", io::to_json(traj).dump(2) + "\n");
    if (g.emit_svg && !traj.records.empty())
        io::write_text(prefix + ".svg",
                       svg::semilog_band_plot(traj, "lambda0", "smallest eigenvalue vs n"));
    std::cout << "wrote " << prefix << ".{csv,json}"
              << (g.emit_svg ? ",svg" : "") << "\n";
    return code;
}

// ---- carleson --------------------------------------------------------------

// trajectory of box constants; weights either self-consistent or a flat
// ambient mass per atom
Trajectory box_trajectory(const NodeSequence& seq, long nmax, const PrecisionContext& ctx,
                          const std::optional<Rational>& ambient) {
    if (!ambient) return box_constant_trajectory(seq, nmax, ctx);
    Trajectory t;
    for (long n = 0; n <= nmax; ++n) {
        NodeSequence sec = seq.prefix(static_cast<size_t>(n + 1));
        DiscreteMeasure mu;
        for (size_t i = 0; i < sec.size(); ++i) {
            Atom a;
            a.point = sec.points[i];
            a.exact_mass = true;
            a.mass_q = *ambient;
            a.mass = Enclosure::from_rational(*ambient, ctx.bits);
            mu.atoms.push_back(std::move(a));
        }
        BoxConstantReport rep = box_constant(to_polar(mu, ctx), ctx);
        TrajectoryRecord rec;
        rec.n = n;
        rec.aux["box_constant"] = rep.constant;
        rec.aux["witness_eps"] = Enclosure::from_rational(rep.witness.eps, ctx.bits);
        rec.aux["witness_phi"] = Enclosure::from_rational(rep.witness.phi_t, ctx.bits);
        t.records.push_back(std::move(rec));
    }
    return t;
}

void cmd_carleson(const Global& g, const std::string& nodes_path, const std::string& measure_path,
                  long nmax, const std::string& weights, std::string prefix) {
    PrecisionContext ctx = make_ctx(g);
    if (prefix.empty()) prefix = path_in(g, "carleson");
    if (!measure_path.empty()) {
        PolarMeasure mu = io::polar_from_json(json::parse(io::read_text(measure_path)), g.bits);
        BoxConstantReport rep = box_constant(mu, ctx);
        io::write_text(prefix + ".json", io::to_json(rep).dump(2) + "\n");
        std::cout << "wrote " << prefix << ".json\n";
        return;
    }
    NodeSequence seq = load_nodes(nodes_path, ctx);
    if (static_cast<size_t>(nmax + 1) > seq.size()) throw InvalidParameter("nmax exceeds node count");
    std::optional<Rational> ambient;
    if (weights != "self") {
        if (weights.rfind("ambient:", 0) != 0)
            throw InvalidParameter("weights must be 'self' or 'ambient:M'");
        ambient = parse_q(weights.substr(8), g.bits);
        if (!(*ambient > Rational(0))) throw InvalidParameter("ambient mass must be positive");
    }
    Trajectory traj = box_trajectory(seq, nmax, ctx, ambient);
    io::write_text(prefix + ".csv", io::to_csv(traj));
    io::write_text(prefix + ".json", io::to_json(traj).dump(2) + "\n");
    if (g.emit_svg)
        io::write_text(prefix + ".svg",
                       svg::semilog_band_plot(traj, "box_constant", "box constant vs n"));
    std::cout << "wrote " << prefix << ".{csv,json}" << (g.emit_svg ? ",svg" : "") << "\n";
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(const Global& g, const std::string& scenario, bool inject_fault,
               std::string output) {
    PrecisionContext ctx = make_ctx(g);
    Backend be = parse_backend(g.backend);
    Rational rel_tol = Rational(1, 1) / Rational(10).pow(12);

    NodeSequence seq;
    long n;
    bool radial = false;
    if (scenario == "two-node") {
        seq = make_explicit({NodePoint::from_rational(Rational(1, 2), Rational(0), g.bits),
                             NodePoint::from_rational(Rational(3, 4), Rational(0), g.bits)});
        n = 1;
    } else if (scenario == "radial-p2-n20") {
        seq = gen_radial_power(Rational(2), 21, ctx);
        n = 20;
        radial = true;
    } else {
        throw InvalidParameter("unknown scenario: " + scenario);
    }

    json checks;
    bool all = true;
    auto record = [&](const std::string& name, bool ok) {
        checks[name] = ok;
        all = all && ok;
        std::cout << (ok ? "pass " : "FAIL ") << name << "\n";
    };

    TheoremComparison tc = theorem_comparison(seq, n, rel_tol, ctx, be);
    record("embed_identity", tc.identity_ok);
    record("carleson_comparison", tc.embed_vs_box_ok && tc.box_vs_embed_ok);

    MatrixFamily family = [&seq](long m) { return pick_matrix(seq, m); };
    record("interlacing", interlacing_check(family, n, rel_tol, ctx, be).pass);

    bool identity;
    if (inject_fault) {
        // corrupt one off-diagonal entry of K, keep W honest: the identity
        // K W^{-1} K W^{-1} = I must then fail
        HermitianKernelMatrix K = pick_matrix(seq, n);
        std::vector<Rational> w = derivative_diagonal_exact(seq, n);
        MatQ kq = K.q;
        kq(0, 1) *= Rational(1001, 1000);
        kq(1, 0) = kq(0, 1);
        long d = K.dim();
        MatQ kw(d, d);
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j) kw(i, j) = kq(i, j) / w[static_cast<size_t>(j)];
        MatQ m = kw * kw;
        identity = true;
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j)
                if (m(i, j) != (i == j ? Rational(1) : Rational(0))) identity = false;
    } else if (seq.all_exact() && seq.all_real() && n + 1 <= 9) {
        identity = proof_identity_exact(seq, n);
    } else {
        identity = proof_identity_certified(seq, n, g.bits);
    }
    record("proof_identity", identity);

    TargetValues targets;
    for (long j = 0; j <= n; ++j) targets.w.push_back(CxQ(Rational(1, 2), Rational(0)));
    DominationReport dom = domination_gap(seq, targets, n, rel_tol, ctx, be);
    record("domination", dom.identity_certified && dom.psd_certified);

    if (radial) {
        DiscreteMeasure mu = nu_measure(seq, ctx);
        long N = seq.points.back().gen_index;
        bool ok = true;
        for (const auto& a : mu.atoms) {
            if (a.point.gen_index == N) continue;
            Enclosure bound = example_mass_lower_bound(Rational(2), a.point.gen_index, N, ctx);
            if (!(a.mass.lo() >= bound.lo())) ok = false;
        }
        record("mass_lower_bounds", ok);
    }

    json rep;
    rep["schema_version"] = io::schema_version;
    rep["scenario"] = scenario;
    rep["fault_injected"] = inject_fault;
    rep["checks"] = std::move(checks);
    rep["all_certified"] = all;
    if (output.empty()) output = path_in(g, "verify.json");
    io::write_text(output, rep.dump(2) + "\n");
    if (!all) {
        std::string failed;
        for (auto it = checks.begin(); it != checks.end(); ++it)
            if (!it.value().get<bool>()) failed += (failed.empty() ? "" : ", ") + it.key();
        std::cerr << "error: invariant violated: " << failed << " (see " << output << ")\n";
        return 4;
    }
    if (inject_fault)
        throw InvariantViolation("fault injection was not detected");
    return 0;
}

// ---- reproduce-example -----------------------------------------------------

int cmd_reproduce(const Global& g, const std::string& p_str, long nmax) {
    PrecisionContext ctx = make_ctx(g);
    Backend be = parse_backend(g.backend);
    Rational p = parse_q(p_str, g.bits);
    Rational rel_tol = Rational(1) / Rational(10).pow(12);
    int code = 0;

    NodeSequence radial = gen_radial_power(p, nmax + 1, ctx);
    MatrixFamily fam = [&radial](long n) { return pick_matrix(radial, n); };

    Trajectory lam;
    try {
        lam = lambda0_trajectory(fam, nmax, rel_tol, ctx, be);
    } catch (const EscalationExhausted& e) {
        std::cerr << "precision exhausted in lambda0 trajectory: " << e.what() << "\n";
        code = 3;
    }
    if (!lam.records.empty()) {
        io::write_text(path_in(g, "radial-lambda0.csv"), io::to_csv(lam));
        io::write_text(path_in(g, "radial-lambda0.json"), io::to_json(lam).dump(2) + "\n");
        io::write_text(path_in(g, "radial-lambda0.svg"),
                       svg::semilog_band_plot(lam, "lambda0", "radial family: lambda0 vs n"));
    }

    Trajectory box = box_constant_trajectory(radial, nmax, ctx);
    io::write_text(path_in(g, "radial-box.csv"), io::to_csv(box));
    io::write_text(path_in(g, "radial-box.json"), io::to_json(box).dump(2) + "\n");
    io::write_text(path_in(g, "radial-box.svg"),
                   svg::semilog_band_plot(box, "box_constant", "radial family: box constant vs n"));

    // nu masses of the full section against the finite-truncation lower bound
    {
        DiscreteMeasure mu = nu_measure(radial, ctx);
        long N = radial.points.back().gen_index;
        Trajectory masses;
        bool all_ok = true;
        for (const auto& a : mu.atoms) {
            TrajectoryRecord rec;
            rec.n = a.point.gen_index;
            rec.aux["mass"] = a.mass;
            if (a.point.gen_index < N) {
                Enclosure bound = example_mass_lower_bound(p, a.point.gen_index, N, ctx);
                rec.aux["lower_bound"] = bound;
                if (!(a.mass.lo() >= bound.lo())) all_ok = false;
            }
            masses.records.push_back(std::move(rec));
        }
        io::write_text(path_in(g, "radial-masses.csv"), io::to_csv(masses));
        if (!all_ok) throw InvariantViolation("certified mass lower bound violated");
    }

    RegularityVerdict radial_v = classify(lam);
    std::cout << "radial p=" << p.to_string() << ": " << tag_name(radial_v.tag) << " ("
              << radial_v.rationale << ")\n";

    NodeSequence geo = gen_geometric(Rational(1, 2), std::min(nmax + 1, 30L), ctx);
    MatrixFamily gfam = [&geo](long n) { return pick_matrix(geo, n); };
    Trajectory glam = lambda0_trajectory(gfam, static_cast<long>(geo.size()) - 1, rel_tol, ctx, be);
    io::write_text(path_in(g, "geometric-lambda0.csv"), io::to_csv(glam));
    io::write_text(path_in(g, "geometric-lambda0.svg"),
                   svg::semilog_band_plot(glam, "lambda0", "geometric family: lambda0 vs n"));
    RegularityVerdict geo_v = classify(glam);
    std::cout << "geometric r=1/2: " << tag_name(geo_v.tag) << " (" << geo_v.rationale << ")\n";

    json verdicts;
    verdicts["schema_version"] = io::schema_version;
    verdicts["radial"] = verdict_json(radial_v);
    verdicts["geometric"] = verdict_json(geo_v);
    io::write_text(path_in(g, "verdicts.json"), verdicts.dump(2) + "\n");
    return code;
}

// ---- dispatch ----------------------------------------------------------------

int run(const std::vector<std::string>& args) {
    CLI::App app{"certified Nevanlinna-Pick / Carleson measure computations"};
    app.require_subcommand(1);

    Global g;
    if (const char* env = std::getenv("NPK_BITS")) g.bits = std::atol(env);
    app.add_option("--bits", g.bits, "working precision in bits");
    app.add_option("--max-bits", g.max_bits, "escalation ceiling in bits");
    app.add_option("--backend", g.backend, "auto|exact|interval");
    app.add_option("--out-dir", g.out_dir, "output directory");
    app.add_flag("--svg", g.emit_svg, "also emit SVG plots");

    auto* nodes = app.add_subcommand("nodes", "generate a node sequence");
    std::string family, p_str = "2", r_str = "1/2", output;
    long count = 10;
    std::vector<std::string> point_strs;
    nodes->add_option("--family", family, "explicit|radial|geometric")->required();
    nodes->add_option("--p", p_str, "radial exponent p > 1");
    nodes->add_option("--r", r_str, "geometric ratio, 0 < r < 1");
    nodes->add_option("--count", count, "number of nodes");
    nodes->add_option("--point", point_strs, "explicit point 're[,im]' (repeatable)");
    nodes->add_option("--output", output, "output path");

    auto* lambda0 = app.add_subcommand("lambda0", "smallest-eigenvalue trajectory");
    std::string kernel = "pick", input, rel_tol_str = "1/1000000000000", prefix;
    long nmax = 10;
    lambda0->add_option("--kernel", kernel, "pick|hankel");
    lambda0->add_option("--input", input, "nodes.json or moments.json")->required();
    lambda0->add_option("--nmax", nmax, "last section index");
    lambda0->add_option("--rel-tol", rel_tol_str, "relative enclosure width target");
    lambda0->add_option("--output-prefix", prefix, "output path prefix");

    auto* carleson = app.add_subcommand("carleson", "box constants");
    std::string nodes_path, measure_path, weights = "self", cprefix;
    long cnmax = 10;
    carleson->add_option("--nodes", nodes_path, "node sequence file");
    carleson->add_option("--measure", measure_path, "polar measure file");
    carleson->add_option("--nmax", cnmax, "last section index");
    carleson->add_option("--weights", weights, "self | ambient:M");
    carleson->add_option("--output-prefix", cprefix, "output path prefix");

    auto* verify = app.add_subcommand("verify", "identity and inequality suite");
    std::string scenario = "two-node", vout;
    bool inject_fault = false;
    verify->add_option("--scenario", scenario, "two-node | radial-p2-n20");
    verify->add_flag("--inject-fault", inject_fault, "corrupt a matrix entry; the run must fail");
    verify->add_option("--output", vout, "report path");

    auto* repro = app.add_subcommand("reproduce-example", "flagship radial-family bundle");
    std::string rp = "2";
    long rnmax = 50;
    repro->add_option("--p", rp, "radial exponent");
    repro->add_option("--nmax", rnmax, "last section index");

    auto* replay = app.add_subcommand("replay", "re-run a recorded manifest");
    std::string manifest_path;
    replay->add_option("manifest", manifest_path, "manifest json")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (replay->parsed()) {
        json m = json::parse(io::read_text(manifest_path));
        std::vector<std::string> argv = m.at("argv").get<std::vector<std::string>>();
        return run(argv);
    }

    if (nodes->parsed()) {
        cmd_nodes(g, family, p_str, r_str, count, point_strs, output);
        write_manifest(g, "nodes", args);
        return 0;
    }
    if (lambda0->parsed()) {
        int code = cmd_lambda0(g, kernel, input, nmax, rel_tol_str, prefix);
        write_manifest(g, "lambda0", args);
        return code;
    }
    if (carleson->parsed()) {
        cmd_carleson(g, nodes_path, measure_path, cnmax, weights, cprefix);
        write_manifest(g, "carleson", args);
        return 0;
    }
    if (verify->parsed()) {
        int code = cmd_verify(g, scenario, inject_fault, vout);
        write_manifest(g, "verify", args);
        return code;
    }
    if (repro->parsed()) {
        int code = cmd_reproduce(g, rp, rnmax);
        write_manifest(g, "reproduce-example", args);
        return code;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return run(args);
    } catch (const InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const EscalationExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const IndeterminateComparison& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InvariantViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

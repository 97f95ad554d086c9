#include "skly/runner.hpp"

#include <atomic>
#include <random>
#include <thread>

#include "skly/transform.hpp"

namespace skly {

namespace {

json report_head(const std::string& command, const RunConfig& cfg) {
    return json{{"schema", kSchema},
                {"version", kVersion},
                {"command", command},
                {"config_hash", config_hash(cfg.raw)},
                {"field", cfg.field.name()},
                {"kind", cfg.kind}};
}

json certificate_json(const Certificate& cert) {
    json clauses = json::array();
    for (const auto& c : cert.clauses)
        clauses.push_back(json{{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    return json{{"pass", cert.pass}, {"clauses", clauses}, {"first_failure", cert.first_failure}};
}

json table_json(const std::map<std::pair<int, int>, int>& t) {
    json a = json::array();
    for (const auto& [key, v] : t)
        a.push_back(json{{"m", key.first}, {"a", key.second}, {"dim", v}});
    return a;
}

template <class K>
json run_construct(const std::string& command, const RunConfig& cfg, typename K::Desc desc) {
    GeometricData<K> gd = build_geometric_data<K>(cfg, desc);
    if (gd.tau_point().inf) throw GenericityError({"sigma^(s+1)=id"});
    ContextOptions<K> opts;
    opts.truncation = cfg.truncation;
    SectionContext<K> ctx(gd, opts);
    const auto& A = ctx.algebra();

    json rep = report_head(command, cfg);
    rep["hilbert"] = A.hilbert();
    if (command == "hilbert") return rep;

    rep["generators"] = A.gens();
    rep["relation_degree"] = A.presentation().rel_degree;
    rep["relation_count"] = A.presentation().relations.dim();
    const int s1 = gd.s() + 1;
    auto center = A.central_subspace(s1);
    json central{{"degree", s1}, {"dimension", center.dim()}};
    if (center.dim() == 1) central["element"] = coords_json(center.basis().row(0));
    rep["central"] = central;

    json kernel_dims = json::array();
    bool surjective = true;
    for (int n = 1; n <= std::min(A.max_degree(), s1 + 2); ++n) {
        auto m = algebra_to_thcr(ctx, n, 0);
        kernel_dims.push_back(m.kernel_space.dim());
        surjective = surjective && m.surjective;
    }
    rep["thcr"] = json{{"kernel_dims", kernel_dims}, {"surjective", surjective}};
    return rep;
}

template <class K>
json transform_report_json(const std::string& command, const RunConfig& cfg,
                           const TransformReport<K>& t) {
    json rep = report_head(command, cfg);
    rep["certificate"] = certificate_json(t.certificate);
    rep["hilbert_table"] = table_json(t.hilbert);
    rep["colength_table"] = table_json(t.colength);
    rep["points"] = divisor_json(t.points);
    rep["output"] = json{{"kind", "quadratic"},
                         {"translation", point_json(t.out_translation)},
                         {"line_bundle", divisor_json(t.out_line_bundle)},
                         {"class", pic_json(t.out_class)}};
    if (t.has_torsion_data) {
        rep["psi"] = json{{"relation", "3*u = 4*t"},
                          {"exact", t.torsion_exact},
                          {"roots_found", t.torsion_roots},
                          {"roots_full", t.torsion_roots_full},
                          {"root_choice", "smallest in the point order"},
                          {"ambiguity", "3-torsion translates give the same class identity"},
                          {"rejected_convention", "3*t = 4*u"}};
    }
    return rep;
}

template <class K>
json run_transform(const std::string& command, const RunConfig& cfg, typename K::Desc desc,
                   bool to_plane) {
    GeometricData<K> gd = build_geometric_data<K>(cfg, desc);
    Divisor<K> pts = build_points<K>(cfg, gd.curve);
    PipelineOptions<K> opts;
    opts.window = Window{cfg.window.m0, cfg.window.m1, cfg.window.amax};
    opts.truncation = cfg.truncation;
    TransformReport<K> t;
    if (to_plane) {
        if (pts.degree() != 1) throw ConfigError("points", "quadric-to-plane expects one point");
        t = quadric_to_plane(gd, pts.support().front(), opts);
    } else {
        if (pts.degree() != 3 || pts.support().size() != 3)
            throw ConfigError("points", "cremona expects three distinct points");
        auto s = pts.support();
        t = cremona(gd, s[0], s[1], s[2], opts);
    }
    return transform_report_json(command, cfg, t);
}

template <class K>
json run_witness(const RunConfig& cfg, typename K::Desc desc) {
    GeometricData<K> gd = build_geometric_data<K>(cfg, desc);
    Divisor<K> pts = build_points<K>(cfg, gd.curve);
    auto rep = function_field_witness(gd, pts, cfg.witness.n, cfg.witness.Nmax,
                                      cfg.witness.base_index);
    json out = report_head("witness", cfg);
    out["n"] = rep.n;
    out["Nmax"] = rep.Nmax;
    out["base_index"] = rep.base_index;
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back(json{{"N", r.N},
                            {"closed_form_bound", r.closed_form_bound},
                            {"vanishing_dim", r.vanishing_dim},
                            {"exact_dim", r.exact_dim}});
    out["table"] = rows;
    out["first_positive_bound_N"] = rep.first_positive_bound_N;
    out["found_N"] = rep.found_N;
    if (rep.found_N > 0) {
        out["witness"] = coords_json(rep.witness);
        out["membership_ok"] = rep.membership_ok;
        out["vanishing_ok"] = rep.vanishing_ok;
    }
    return out;
}

// deterministic sweep over randomized configurations ------------------------

struct SweepDraw {
    GeometricData<Fp> gd;
    Divisor<Fp> pts;
};

Fp rand_fp(std::mt19937_64& rng, std::uint64_t p) { return Fp(rng() % p, p); }

CurvePoint<Fp> rand_point(std::mt19937_64& rng, const Curve<Fp>& c) {
    const std::uint64_t p = c.desc().p;
    for (;;) {
        Fp x = rand_fp(rng, p);
        Fp r = c.rhs(x);
        if (r.is_zero()) continue;  // avoid 2-torsion draws
        auto root = sqrt_mod(r.value(), p);
        if (!root) continue;
        std::uint64_t y = (rng() & 1) ? *root : p - *root;
        return CurvePoint<Fp>(x, Fp(y, p));
    }
}

Curve<Fp> rand_curve(std::mt19937_64& rng, std::uint64_t p, bool order_coprime_3) {
    for (;;) {
        try {
            Curve<Fp> c(rand_fp(rng, p), rand_fp(rng, p));
            if (order_coprime_3 && enumerate_points(c).size() % 3 == 0) continue;
            return c;
        } catch (const Error&) {
            continue;  // singular draw
        }
    }
}

SweepDraw draw_config(std::mt19937_64& rng, std::uint64_t p, AlgebraKind kind) {
    SweepDraw d;
    d.gd.kind = kind;
    // division by 3 must be solvable for the cubic pipeline
    d.gd.curve = rand_curve(rng, p, kind == AlgebraKind::cubic);
    d.gd.t = rand_point(rng, d.gd.curve);
    const int nd0 = kind == AlgebraKind::quadratic ? 3 : 2;
    Divisor<Fp> d0;
    while (d0.degree() < nd0) {
        auto q = rand_point(rng, d.gd.curve);
        if (d0.multiplicity(q) == 0) d0.add(q, 1);
    }
    d.gd.line_bundle = d0;
    const int npts = kind == AlgebraKind::quadratic ? 3 : 1;
    while (d.pts.degree() < npts) {
        auto q = rand_point(rng, d.gd.curve);
        if (d.pts.multiplicity(q) == 0) d.pts.add(q, 1);
    }
    return d;
}

// One isolated sweep run with its own derived seed; safe to execute
// concurrently with other runs.
json sweep_one(std::uint64_t seed, int run, std::uint64_t p, AlgebraKind kind, const Window& w,
               int* rejected_out) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(run + 1));
    json entry{{"index", run}};
    int attempts = 0;
    int rejected = 0;
    for (;;) {
        ++attempts;
        if (attempts > 200) throw Error("sweep: no generic configuration found in 200 draws");
        SweepDraw d = draw_config(rng, p, kind);
        auto bad = validate_genericity(d.gd, d.pts, w);
        if (!bad.empty()) {
            ++rejected;
            continue;
        }
        PipelineOptions<Fp> opts;
        opts.window = w;
        TransformReport<Fp> rep;
        try {
            if (kind == AlgebraKind::cubic) {
                rep = quadric_to_plane(d.gd, d.pts.support().front(), opts);
            } else {
                auto s = d.pts.support();
                rep = cremona(d.gd, s[0], s[1], s[2], opts);
            }
        } catch (const GenericityError&) {
            ++rejected;
            continue;
        }
        entry["attempts"] = attempts;
        entry["rejected_attempts"] = rejected;
        entry["curve"] =
            json{{"a", scalar_json(d.gd.curve.a())}, {"b", scalar_json(d.gd.curve.b())}};
        entry["t"] = point_json(d.gd.t);
        entry["D0"] = divisor_json(d.gd.line_bundle);
        entry["points"] = divisor_json(d.pts);
        bool ok = rep.certificate.pass && (kind != AlgebraKind::cubic || rep.torsion_exact);
        entry["verdict"] = ok ? "PASS" : "FAIL";
        if (!ok) entry["first_failure"] = rep.certificate.first_failure;
        break;
    }
    *rejected_out = rejected;
    return entry;
}

json run_sweep(const RunConfig& cfg) {
    if (cfg.field.rational) throw ConfigError("field", "sweep requires a prime field");
    const std::uint64_t p = cfg.field.p;
    const AlgebraKind kind =
        cfg.kind == "quadratic" ? AlgebraKind::quadratic : AlgebraKind::cubic;
    Window w{cfg.window.m0, cfg.window.m1, cfg.window.amax};

    // runs are isolated (own rng, own context); execute them in parallel and
    // merge in index order so the report is deterministic under the seed
    std::vector<json> entries(static_cast<size_t>(cfg.runs));
    std::vector<int> rejects(static_cast<size_t>(cfg.runs), 0);
    std::vector<std::string> errors(static_cast<size_t>(cfg.runs));
    const unsigned hw = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int run = next.fetch_add(1);
            if (run >= cfg.runs) return;
            try {
                entries[static_cast<size_t>(run)] =
                    sweep_one(cfg.seed, run, p, kind, w, &rejects[static_cast<size_t>(run)]);
            } catch (const std::exception& e) {
                errors[static_cast<size_t>(run)] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < hw && static_cast<int>(i) < cfg.runs; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (!e.empty()) throw Error(e);

    json runs = json::array();
    int pass = 0, fail = 0, rejected = 0;
    for (int run = 0; run < cfg.runs; ++run) {
        const json& entry = entries[static_cast<size_t>(run)];
        (entry["verdict"] == "PASS" ? pass : fail) += 1;
        rejected += rejects[static_cast<size_t>(run)];
        runs.push_back(entry);
    }
    json out = report_head("sweep", cfg);
    out["runs"] = runs;
    out["summary"] = json{{"pass", pass}, {"fail", fail}, {"rejected_attempts", rejected}};
    return out;
}

template <class K>
json dispatch_typed(const std::string& command, const RunConfig& cfg, typename K::Desc desc) {
    if (command == "construct" || command == "hilbert")
        return run_construct<K>(command, cfg, desc);
    if (command == "transform quadric-to-plane") return run_transform<K>(command, cfg, desc, true);
    if (command == "transform cremona") return run_transform<K>(command, cfg, desc, false);
    if (command == "witness") return run_witness<K>(cfg, desc);
    throw ConfigError("command", "unknown command '" + command + "'");
}

}  // namespace

json run_command(const std::string& command, const json& config) {
    RunConfig cfg = parse_config(config);
    if (command == "sweep") return run_sweep(cfg);
    if (cfg.field.rational) return dispatch_typed<Rat>(command, cfg, RatDesc{});
    return dispatch_typed<Fp>(command, cfg, FpDesc{cfg.field.p});
}

std::string run_command_text(const std::string& command, const std::string& config_text) {
    json cfg;
    try {
        cfg = json::parse(config_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("(json)", e.what());
    }
    return run_command(command, cfg).dump(2);
}

}  // namespace skly

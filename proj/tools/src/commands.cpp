#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "hyperlab/errors.hpp"
#include "hyperlab_cli/run.hpp"

namespace hyperlab::cli {

namespace {

struct Outcome {
    json results = json::object();
    std::string status = "success";
    int code = 0;
    std::string csv;
};

int verdict_code(VerdictValue v) {
    switch (v) {
        case VerdictValue::Holds: return 0;
        case VerdictValue::Fails: return 1;
        case VerdictValue::Inconclusive: return 2;
    }
    return 2;
}

Outcome from_verdict(const Verdict& v) {
    Outcome o;
    o.results["verdict"] = to_json(v);
    o.status = verdict_name(v.value);
    o.code = verdict_code(v.value);
    return o;
}

const json& require(const json& c, const char* key) {
    if (!c.contains(key)) throw ConfigError(std::string("missing required key '") + key + "'");
    return c.at(key);
}

json hits_json(const std::vector<HitRecord>& rows) {
    json a = json::array();
    for (const auto& h : rows) a.push_back({{"lambda", num(h.lambda)}, {"k", h.k}, {"error", num(h.error)}});
    return a;
}

std::vector<double> dvec(const json& v, const std::string& where) {
    if (!v.is_array()) throw ConfigError(where + " must be an array");
    std::vector<double> out;
    for (const auto& x : v) out.push_back(as_number(x, where));
    return out;
}

// ---- check ----

Outcome check_shift(const json& c) {
    expect_keys(c, {"command", "seed", "weights", "predicate", "p", "n_max", "k_max", "sum_n_max", "tau", "lambda",
                    "tail", "term_n"},
                "check shift config");
    const WeightSequence w = parse_weights(require(c, "weights"), Side::Unilateral);
    const std::string pred = get_string(c, "predicate", "ufhcs");
    const double tau = get_number(c, "tau", 1e-2);
    const double lambda = get_number(c, "lambda", 0);
    const double p = get_number(c, "p", 2);
    const TailCertificate tail = c.contains("tail") ? parse_tail(c.at("tail")) : TailCertificate{};
    Outcome o;
    if (pred == "hcs") {
        o = from_verdict(hcs_shift(w, get_int(c, "n_max", 50), get_int(c, "k_max", 100000), tau, lambda));
    } else if (pred == "ufhc") {
        o = from_verdict(ufhc_shift(w, p, get_int(c, "sum_n_max", 1000000), tail, tau, lambda));
    } else if (pred == "ufhcs") {
        UfhcsOptions opt;
        opt.hcs_n_max = get_int(c, "n_max", opt.hcs_n_max);
        opt.hcs_k_max = get_int(c, "k_max", opt.hcs_k_max);
        opt.sum_n_max = get_int(c, "sum_n_max", opt.sum_n_max);
        opt.tail = tail;
        opt.tau = tau;
        opt.lambda = lambda;
        o = from_verdict(ufhcs_shift(w, p, opt));
    } else {
        throw ConfigError("predicate must be hcs, ufhc or ufhcs");
    }
    if (c.contains("term_n")) o.results["term"] = num(ufhc_term(w, p, get_int(c, "term_n", 1), lambda));
    o.results["weights"] = w.describe();
    return o;
}

Outcome check_bilateral(const json& c) {
    expect_keys(c, {"command", "seed", "weights", "p", "m_max", "tail", "tau"}, "check bilateral config");
    const WeightSequence w = parse_weights(require(c, "weights"), Side::Bilateral);
    const TailCertificate tail = c.contains("tail") ? parse_tail(c.at("tail")) : TailCertificate{};
    Outcome o = from_verdict(
        fhcs_bilateral(w, get_number(c, "p", 2), get_int(c, "m_max", 100000), tail, get_number(c, "tau", 1e-2)));
    o.results["weights"] = w.describe();
    return o;
}

Outcome check_kothe(const json& c) {
    expect_keys(c, {"command", "seed", "family", "K", "j", "m", "C", "n_max", "k_min", "k_max", "tau", "ratio"},
                "check kothe config");
    const OperatorFamily fam = parse_family(require(c, "family"));
    const Interval K = parse_interval(require(c, "K"), false, "K");
    KotheLimsupOptions opt;
    opt.j = static_cast<int>(get_int(c, "j", opt.j));
    opt.m = static_cast<int>(get_int(c, "m", opt.m));
    opt.C = get_number(c, "C", opt.C);
    opt.n_max = get_int(c, "n_max", opt.n_max);
    opt.k_min = get_int(c, "k_min", opt.k_min);
    opt.k_max = get_int(c, "k_max", opt.k_max);
    opt.tau = get_number(c, "tau", opt.tau);
    Outcome o = from_verdict(kothe_limsup_test(fam, K, opt));
    if (c.contains("ratio")) {
        const json& r = c.at("ratio");
        expect_keys(r, {"n", "k"}, "ratio");
        const double v = family_bound_on_basis(fam, K, get_int(r, "n", 1), get_int(r, "k", 10),
                                               fam.space().seminorm(opt.j), fam.space().seminorm(opt.m));
        o.results["ratio"] = {{"n", get_int(r, "n", 1)}, {"k", get_int(r, "k", 10)}, {"value", num(v)}};
    }
    o.results["family"] = fam.describe();
    return o;
}

Outcome check_rp(const json& c) {
    expect_keys(c, {"command", "seed", "shape", "degree", "coeffs", "lambda", "method", "grid", "tol", "angles",
                    "radii"},
                "check rp config");
    RPShape s;
    const std::string shape = get_string(c, "shape", "scalar");
    s.range = parse_interval(require(c, "lambda"), true, "lambda");
    if (shape == "scalar") {
        s.kind = RPShape::Kind::Scalar;
    } else if (shape == "monomial") {
        s.kind = RPShape::Kind::Monomial;
        s.degree = static_cast<int>(get_int(c, "degree", 1));
    } else if (shape == "generic") {
        s.kind = RPShape::Kind::Generic;
        s.coeffs = dvec(require(c, "coeffs"), "coeffs");
    } else {
        throw ConfigError("shape must be scalar, monomial or generic");
    }
    RPOptions opt;
    opt.grid = static_cast<int>(get_int(c, "grid", opt.grid));
    opt.tol = get_number(c, "tol", opt.tol);
    opt.angles = static_cast<int>(get_int(c, "angles", opt.angles));
    opt.radii = static_cast<int>(get_int(c, "radii", opt.radii));
    const std::string method = get_string(c, "method", "auto");
    if (method != "auto" && method != "bisection") throw ConfigError("method must be auto or bisection");
    opt.force_bisection = method == "bisection";
    const RPResult r = r_p(s, opt);
    Outcome o;
    o.results = {{"r_P", num(r.value)}, {"method", r.method}, {"descriptor", r.descriptor}, {"grid", r.grid}};
    if (s.kind != RPShape::Kind::Generic && !opt.force_bisection && s.range.bounded()) {
        RPOptions b = opt;
        b.force_bisection = true;
        o.results["bisection_check"] = num(r_p(s, b).value);
    }
    return o;
}

ChcOptions chc_options(const json& c, std::uint64_t seed) {
    ChcOptions opt;
    opt.truncation = get_int(c, "truncation", opt.truncation);
    opt.tuples = static_cast<int>(get_int(c, "tuples", opt.tuples));
    opt.tuple_length = static_cast<int>(get_int(c, "tuple_length", opt.tuple_length));
    opt.delta_grid = static_cast<int>(get_int(c, "delta_grid", opt.delta_grid));
    opt.seed = seed;
    return opt;
}

json evidence_json(const ChcEvidence& ev) {
    return {{"K", to_json(ev.K)},
            {"epsilon", num(ev.epsilon)},
            {"C", ev.C},
            {"support_max", ev.support_max},
            {"tail1", num(ev.tail1)},
            {"tail2", num(ev.tail2)},
            {"tail5", num(ev.tail5)},
            {"beyond_truncation", num(ev.beyond_truncation)},
            {"extrapolation", ev.extrapolation},
            {"delta_formula", ev.delta.formula()},
            {"delta_scale", num(ev.delta.scale)},
            {"divergence_c", num(ev.divergence_c)},
            {"delta_checks", ev.delta_checks},
            {"delta_worst", num(ev.delta_worst)},
            {"tuples", ev.tuples},
            {"tuple_length", ev.tuple_length},
            {"seed", ev.seed},
            {"tuple_worst1", num(ev.tuple_worst1)},
            {"tuple_worst2", num(ev.tuple_worst2)},
            {"tuple_worst5", num(ev.tuple_worst5)},
            {"seminorm", ev.seminorm.describe()}};
}

Outcome check_chc(const json& c, std::uint64_t seed) {
    expect_keys(c, {"command", "seed", "family", "K", "y", "epsilon", "truncation", "tuples", "tuple_length",
                    "delta_grid"},
                "check chc config");
    const OperatorFamily fam = parse_family(require(c, "family"));
    const ChcEvidence ev = chc_evidence(fam, parse_interval(require(c, "K"), false, "K"),
                                        parse_vector(require(c, "y"), fam.space().side),
                                        as_number(require(c, "epsilon"), "epsilon"), chc_options(c, seed));
    Outcome o;
    o.results["evidence"] = evidence_json(ev);
    const bool ok = ev.delta_worst < 1 && ev.tail2 < ev.epsilon && ev.tuple_worst2 <= ev.tail2 &&
                    ev.tuple_worst5 <= ev.tail5 && ev.tuple_worst1 == 0;
    o.status = ok ? "holds" : "fails";
    o.code = ok ? 0 : 1;
    return o;
}

// ---- construct ----

ChcBlockReport build_block(const json& c, const OperatorFamily& fam, std::uint64_t seed, int grid) {
    ChcBlockOptions opt;
    opt.N0 = get_int(c, "N0", 0);
    opt.L_cap = get_int(c, "L_cap", opt.L_cap);
    opt.grid = grid;
    opt.evidence = chc_options(c, seed);
    return chc_block_vector(fam, parse_interval(require(c, "K"), false, "K"),
                            parse_vector(require(c, "y"), fam.space().side), as_number(require(c, "epsilon"), "epsilon"),
                            opt);
}

json block_json(const ChcBlockReport& r) {
    json ladder = json::array(), deltas = json::array();
    for (double x : r.ladder) ladder.push_back(num(x));
    for (double x : r.deltas) deltas.push_back(num(x));
    return {{"x", to_json(r.x)},
            {"y", to_json(r.y)},
            {"K", to_json(r.K)},
            {"epsilon", num(r.epsilon)},
            {"seminorm", r.seminorm.describe()},
            {"N0", r.N0},
            {"N1", r.N1},
            {"C", r.C},
            {"L", r.anchors.size()},
            {"ladder", ladder},
            {"anchors", r.anchors},
            {"deltas", deltas},
            {"delta_formula", r.delta_rule.formula()},
            {"per_lambda", hits_json(r.per_lambda)},
            {"x_norm", num(r.x_norm)},
            {"max_error", num(r.max_error)},
            {"verified", r.verified}};
}

Outcome construct_chc(const json& c, std::uint64_t seed) {
    expect_keys(c, {"command", "seed", "family", "K", "y", "epsilon", "N0", "L_cap", "grid", "truncation", "tuples",
                    "tuple_length", "delta_grid"},
                "construct chc config");
    const OperatorFamily fam = parse_family(require(c, "family"));
    const ChcBlockReport r = build_block(c, fam, seed, static_cast<int>(get_int(c, "grid", 101)));
    Outcome o;
    o.results = block_json(r);
    o.results["family"] = fam.describe();
    o.status = r.verified ? "success" : "violation";
    o.code = r.verified ? 0 : 1;
    return o;
}

DecayBasis basis_from(const json& c, WeightSequence& w) {
    w = parse_weights(require(c, "weights"), Side::Bilateral);
    return bilateral_decay_basis(w, get_int(c, "count", 8), get_int(c, "k0", 0), get_int(c, "horizon", 1000),
                                 get_number(c, "p", 2));
}

json decay_json(const DecaySweepResult& d) {
    json norms = json::array();
    for (double x : d.max_norm) norms.push_back(num(x));
    return {{"samples", d.samples},
            {"checks", d.checks},
            {"violations", d.violations},
            {"worst_margin", num(d.worst_margin)},
            {"max_norm", norms}};
}

Outcome construct_bilateral(const json& c, std::uint64_t seed) {
    expect_keys(c, {"command", "seed", "weights", "count", "k0", "horizon", "p", "samples", "N"},
                "construct bilateral-basis config");
    WeightSequence w = WeightSequence::unilateral(WeightRule::constant(1));
    const DecayBasis b = basis_from(c, w);
    Outcome o;
    json certs = json::array();
    for (double x : b.certificates) certs.push_back(num(x));
    o.results = {{"indices", b.indices}, {"certificates", certs}, {"scan_max_f", b.scan_max_f},
                 {"horizon", b.horizon}, {"weights", w.describe()}};
    bool ok = std::all_of(b.certificates.begin(), b.certificates.end(), [](double x) { return x <= 1; });
    if (c.contains("samples") && !b.indices.empty()) {
        DecaySweepOptions opt;
        opt.samples = get_int(c, "samples", 100);
        opt.N = get_int(c, "N", 64);
        opt.seed = seed;
        opt.p = get_number(c, "p", 2);
        const DecaySweepResult d = decay_sweep(w, b, opt);
        o.results["sweep"] = decay_json(d);
        ok = ok && d.violations == 0;
    }
    o.status = ok ? "success" : "violation";
    o.code = ok ? 0 : 1;
    return o;
}

MkOptions mk_options(const json& c) {
    MkOptions opt;
    const double Cv = get_number(c, "C", 1);
    opt.C = [Cv](int, int) { return Cv; };
    opt.m_token = get_string(c, "m", "2j");
    opt.m = parse_m_rule(opt.m_token);
    opt.start_index = get_int(c, "start_index", 0);
    opt.scan_cap = get_int(c, "scan_cap", opt.scan_cap);
    if (c.contains("K")) {
        const json& ks = c.at("K");
        if (!ks.is_array()) throw ConfigError("K must be an array of [lo, hi] intervals, one per n");
        std::vector<Interval> list;
        for (const auto& k : ks) list.push_back(parse_interval(k, false, "K"));
        opt.K = [list](int n) {
            if (n > static_cast<int>(list.size())) throw ConfigError("K ladder has no entry for n = " + std::to_string(n));
            return list[static_cast<std::size_t>(n - 1)];
        };
    }
    return opt;
}

json mk_json(const MkBasis& b) {
    json rows = json::array();
    for (const auto& r : b.table)
        rows.push_back({{"l", r.l}, {"n", r.n}, {"j", r.j}, {"m", r.m}, {"value", num(r.value)}, {"bound", num(r.bound)}});
    return {{"indices", b.indices}, {"table", rows}, {"description", b.description}};
}

Outcome construct_mk(const json& c) {
    expect_keys(c, {"command", "seed", "family", "count", "C", "m", "start_index", "scan_cap", "K"},
                "construct mk-basis config");
    const OperatorFamily fam = parse_family(require(c, "family"));
    Outcome o;
    o.results = mk_json(kothe_mk_basis(fam, static_cast<int>(get_int(c, "count", 4)), mk_options(c)));
    o.results["family"] = fam.describe();
    return o;
}

std::vector<FamilyOnCompact> families_from(const json& c) {
    const json& fs = require(c, "families");
    if (!fs.is_array() || fs.empty()) throw ConfigError("'families' must be a nonempty array");
    std::vector<FamilyOnCompact> out;
    for (const auto& f : fs) {
        expect_keys(f, {"family", "K"}, "families entry");
        out.push_back({parse_family(require(f, "family")), parse_interval(require(f, "K"), false, "K")});
    }
    return out;
}

Outcome construct_nicemn(const json& c, int grid) {
    expect_keys(c, {"command", "seed", "families", "u", "mk_basis", "truncation", "phi", "scan_cap", "N", "grid"},
                "construct nicemn config");
    const auto families = families_from(c);
    std::vector<SeqVector> u;
    const Side side = families.front().family.space().side;
    Outcome o;
    if (c.contains("u")) {
        if (!c.at("u").is_array()) throw ConfigError("'u' must be an array of vectors");
        for (const auto& v : c.at("u")) u.push_back(parse_vector(v, side));
    } else {
        const json& mc = require(c, "mk_basis");
        expect_keys(mc, {"count", "C", "m", "start_index", "scan_cap", "K"}, "mk_basis");
        const MkBasis mk = kothe_mk_basis(families.front().family, static_cast<int>(get_int(mc, "count", 4)),
                                          mk_options(mc));
        o.results["mk_basis"] = mk_json(mk);
        for (std::int64_t k : mk.indices) u.push_back(SeqVector::basis(k, side));
    }
    NicemnOptions opt;
    opt.truncation = static_cast<int>(get_int(c, "truncation", opt.truncation));
    opt.scan_cap = get_int(c, "scan_cap", opt.scan_cap);
    if (c.contains("phi")) {
        const json& pc = c.at("phi");
        expect_keys(pc, {"sequence", "kmax", "delta"}, "phi");
        PhiOptions po;
        if (pc.contains("delta")) po.delta = parse_rational(pc.at("delta"), "phi.delta");
        opt.phi = min_phi(parse_sequence(require(pc, "sequence")), get_int(pc, "kmax", 64), po);
    }
    const FiniteSupportOracle oracle;
    const NicemnResult r = nicemn_synthesize(families, u, oracle, opt);
    json xs = json::array(), bounds = json::array(), windows = json::array();
    for (const auto& x : r.x) xs.push_back(to_json(x));
    for (const auto& b : r.bounds)
        bounds.push_back({{"l", b.l}, {"i", b.i}, {"condition", b.condition}, {"value", num(b.value)}, {"bound", num(b.bound)}});
    for (const auto& [lo, hi] : r.windows) windows.push_back(json::array({lo, hi}));
    o.results["x"] = xs;
    o.results["selected"] = r.selected;
    o.results["windows"] = windows;
    o.results["bounds"] = bounds;
    o.results["oracle"] = r.oracle;
    if (!r.x.empty() && !r.windows.empty()) {
        json res = json::array();
        for (const auto& row : decay_sweep(families, r, get_int(c, "N", r.windows.back().second), grid))
            res.push_back({{"i", row.i}, {"k", row.k}, {"residual", num(row.residual)}});
        o.results["residuals"] = res;
    }
    return o;
}

// ---- simulate ----

std::optional<SeminormSpec> seminorm_from(const json& c, const OperatorFamily& fam) {
    if (!c.contains("j")) return std::nullopt;
    return fam.space().seminorm(static_cast<int>(get_int(c, "j", 1)));
}

Outcome simulate_orbit(const json& c) {
    expect_keys(c, {"command", "seed", "family", "lambda", "x", "N", "target", "j"}, "simulate orbit config");
    const OperatorFamily fam = parse_family(require(c, "family"));
    const Side side = fam.space().side;
    OrbitOptions opt;
    opt.seminorm = seminorm_from(c, fam);
    if (c.contains("target")) opt.target = parse_vector(c.at("target"), side);
    const OrbitTrace t = orbit(fam, as_number(require(c, "lambda"), "lambda"), parse_vector(require(c, "x"), side),
                               get_int(c, "N", 10), opt);
    Outcome o;
    json norms = json::array(), dist = json::array();
    for (double x : t.seminorms) norms.push_back(num(x));
    for (double x : t.distances) dist.push_back(num(x));
    o.results = {{"family", t.family}, {"lambda", num(t.lambda)}, {"N", t.N}, {"seminorm", t.seminorm.describe()},
                 {"seminorms", norms}};
    if (opt.target) o.results["distances"] = dist;
    std::ostringstream csv;
    csv.precision(17);
    csv << "n,seminorm,distance\n";
    for (std::size_t n = 0; n < t.seminorms.size(); ++n) {
        csv << n << "," << t.seminorms[n] << ",";
        if (!t.distances.empty()) csv << t.distances[n];
        csv << "\n";
    }
    o.csv = csv.str();
    return o;
}

Outcome simulate_return(const json& c) {
    expect_keys(c, {"command", "seed", "family", "lambda", "x", "y", "epsilon", "N", "j"}, "simulate return config");
    const OperatorFamily fam = parse_family(require(c, "family"));
    const Side side = fam.space().side;
    const ReturnResult r = return_density(fam, as_number(require(c, "lambda"), "lambda"),
                                          parse_vector(require(c, "x"), side), parse_vector(require(c, "y"), side),
                                          as_number(require(c, "epsilon"), "epsilon"), get_int(c, "N", 100),
                                          seminorm_from(c, fam));
    Outcome o;
    o.results = {{"hits", r.set.hits}, {"epsilon", num(r.set.epsilon)}, {"N", r.set.N},
                 {"seminorm", r.set.seminorm.describe()}, {"density", to_json(r.density)}};
    return o;
}

Outcome simulate_sweep(const json& c, std::uint64_t seed, int grid) {
    const std::string kind = get_string(c, "kind", "hitting");
    Outcome o;
    if (kind == "hitting") {
        expect_keys(c, {"command", "seed", "kind", "family", "K", "y", "epsilon", "N0", "L_cap", "grid", "truncation",
                        "tuples", "tuple_length", "delta_grid"},
                    "simulate sweep config");
        const OperatorFamily fam = parse_family(require(c, "family"));
        const ChcBlockReport r = build_block(c, fam, seed, 101);
        const SweepResult s = hitting_sweep(fam, r, grid);
        o.results = {{"kind", kind}, {"N0", r.N0}, {"N1", r.N1}, {"rows", hits_json(s.rows)},
                     {"violations", s.violations}, {"max_error", num(s.max_error)}, {"bar", num(3 * r.epsilon)}};
        o.status = s.violations == 0 ? "success" : "violation";
        o.code = s.violations == 0 ? 0 : 1;
    } else if (kind == "decay") {
        expect_keys(c, {"command", "seed", "kind", "weights", "count", "k0", "horizon", "p", "samples", "N",
                        "zero_coefficients"},
                    "simulate sweep config");
        WeightSequence w = WeightSequence::unilateral(WeightRule::constant(1));
        const DecayBasis b = basis_from(c, w);
        DecaySweepOptions opt;
        opt.samples = get_int(c, "samples", 100);
        opt.N = get_int(c, "N", 64);
        opt.seed = seed;
        opt.p = get_number(c, "p", 2);
        opt.zero_coefficients = get_bool(c, "zero_coefficients", false);
        const DecaySweepResult d = decay_sweep(w, b, opt);
        o.results = decay_json(d);
        o.results["kind"] = kind;
        o.results["indices"] = b.indices;
        o.status = d.violations == 0 ? "success" : "violation";
        o.code = d.violations == 0 ? 0 : 1;
    } else {
        throw ConfigError("sweep kind must be hitting or decay");
    }
    return o;
}

// ---- density ----

Outcome density_cmd(const json& c) {
    expect_keys(c, {"command", "seed", "sequence", "set", "N", "phi", "image"}, "density config");
    const std::int64_t N = get_int(c, "N", 1000000);
    Outcome o;
    if (c.contains("set")) {
        const json& s = c.at("set");
        if (!s.is_array()) throw ConfigError("'set' must be an integer array");
        std::vector<std::int64_t> vals;
        for (const auto& x : s) {
            if (!x.is_number_integer()) throw ConfigError("'set' entries must be integers");
            vals.push_back(x.get<std::int64_t>());
        }
        o.results["density"] = to_json(density(vals, N));
        return o;
    }
    const IndexSequence nk = parse_sequence(require(c, "sequence"));
    o.results["density"] = to_json(density(nk, N));
    std::optional<Rational> delta;
    if (c.contains("phi")) {
        const json& pc = c.at("phi");
        expect_keys(pc, {"kmax", "delta", "scan_bound"}, "phi");
        PhiOptions po;
        if (pc.contains("delta")) po.delta = parse_rational(pc.at("delta"), "phi.delta");
        po.scan_bound = get_int(pc, "scan_bound", po.scan_bound);
        const PhiMap m = min_phi(nk, get_int(pc, "kmax", 1000), po);
        delta = m.delta;
        std::int64_t certified = 0;
        for (bool b : m.certificate) certified += b ? 1 : 0;
        json head = json::array();
        for (std::size_t i = 0; i < std::min<std::size_t>(m.table.size(), 16); ++i) head.push_back(m.table[i]);
        o.results["phi"] = {{"kmax", m.kmax()}, {"delta", to_json(m.delta)}, {"certified", certified},
                            {"all_certified", m.all_certified()}, {"first", head},
                            {"last", m.table.empty() ? json(nullptr) : json(m.table.back())}};
        if (!m.all_certified()) {
            o.status = "fails";
            o.code = 1;
        }
    }
    if (c.contains("image")) {
        const json& ic = c.at("image");
        expect_keys(ic, {"anchors", "delta"}, "image");
        if (ic.contains("delta")) delta = parse_rational(ic.at("delta"), "image.delta");
        if (!delta) delta = density(nk, 1000000).upper;
        const std::int64_t rank_horizon = nk.count_upto(N);
        const IndexSequence anchors_seq = parse_sequence(require(ic, "anchors"));
        std::vector<std::int64_t> anchors;
        for (std::int64_t s = 1; anchors_seq.has_rank(s); ++s) {
            const std::int64_t a = anchors_seq.at(s);
            if (a > rank_horizon) break;
            if (a >= 1) anchors.push_back(a);
        }
        const IndexUnion I = IndexUnion::censored(nk, *delta, anchors, rank_horizon);
        o.results["image"] = {{"delta", to_json(*delta)}, {"rank_horizon", rank_horizon},
                              {"intervals", I.intervals().size()}, {"ranks", I.size()},
                              {"density", to_json(image_density(nk, I, N))}};
    }
    return o;
}

void apply_overrides(const Invocation& inv, json& c) {
    const std::string cmd = command_name(inv);
    if (inv.seed) c["seed"] = *inv.seed;
    if (inv.grid) {
        static const std::set<std::string> ok = {"check rp", "construct chc", "construct nicemn", "simulate sweep"};
        if (!ok.count(cmd)) throw ConfigError("--grid does not apply to '" + cmd + "'");
        c["grid"] = *inv.grid;
    }
    if (inv.horizon) {
        static const std::map<std::string, const char*> key = {
            {"check shift", "k_max"},   {"check bilateral", "m_max"},           {"check kothe", "k_max"},
            {"construct bilateral-basis", "horizon"}, {"simulate orbit", "N"}, {"simulate return", "N"},
            {"density", "N"}};
        auto it = key.find(cmd);
        if (it == key.end()) throw ConfigError("--horizon does not apply to '" + cmd + "'");
        c[it->second] = *inv.horizon;
    }
}

Outcome dispatch(const Invocation& inv, const json& c) {
    const std::string cmd = command_name(inv);
    const std::uint64_t seed = static_cast<std::uint64_t>(get_int(c, "seed", 1));
    const int grid = static_cast<int>(get_int(c, "grid", 101));
    if (cmd == "check shift") return check_shift(c);
    if (cmd == "check bilateral") return check_bilateral(c);
    if (cmd == "check kothe") return check_kothe(c);
    if (cmd == "check rp") return check_rp(c);
    if (cmd == "check chc") return check_chc(c, seed);
    if (cmd == "construct chc") return construct_chc(c, seed);
    if (cmd == "construct bilateral-basis") return construct_bilateral(c, seed);
    if (cmd == "construct mk-basis") return construct_mk(c);
    if (cmd == "construct nicemn") return construct_nicemn(c, static_cast<int>(get_int(c, "grid", 11)));
    if (cmd == "simulate orbit") return simulate_orbit(c);
    if (cmd == "simulate return") return simulate_return(c);
    if (cmd == "simulate sweep") return simulate_sweep(c, seed, grid);
    if (cmd == "density") return density_cmd(c);
    throw ConfigError("unknown command '" + cmd + "'");
}

}  // namespace

std::string command_name(const Invocation& inv) { return inv.name.empty() ? inv.group : inv.group + " " + inv.name; }

RunOutcome run(const Invocation& inv) {
    RunOutcome out;
    json config = inv.config;
    out.report = {{"schema", kReportSchema}, {"command", command_name(inv)}};
    const auto start = std::chrono::steady_clock::now();
    try {
        if (!config.is_object()) throw ConfigError("config must be a JSON object");
        if (config.contains("command") && config.at("command") != command_name(inv))
            throw ConfigError("config is for '" + config.at("command").dump() + "', not '" + command_name(inv) + "'");
        apply_overrides(inv, config);
        out.report["config"] = config;
        out.report["seed"] = get_int(config, "seed", 1);
        Outcome o = dispatch(inv, config);
        out.report["results"] = std::move(o.results);
        out.report["status"] = o.status;
        out.exit_code = o.code;
        out.csv = std::move(o.csv);
    } catch (const std::exception& e) {
        // hyperlab errors, JSON type errors and allocation failures all land here
        out.report["config"] = config;
        out.report["status"] = "error";
        out.report["error"] = e.what();
        out.exit_code = 2;
    }
    out.report["exit_code"] = out.exit_code;
    out.report["wall_clock_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace hyperlab::cli

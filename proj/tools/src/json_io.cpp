#include "hyperlab_cli/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "hyperlab/errors.hpp"

namespace hyperlab::cli {

void expect_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items())
        if (!ok.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

double as_number(const json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "+inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
    }
    throw ConfigError(where + " must be a number");
}

double get_number(const json& obj, const char* key, double fallback) {
    return obj.contains(key) ? as_number(obj.at(key), std::string("'") + key + "'") : fallback;
}

std::int64_t get_int(const json& obj, const char* key, std::int64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d == std::floor(d) && std::abs(d) < 9.0e18) return static_cast<std::int64_t>(d);
    }
    throw ConfigError(std::string("'") + key + "' must be an integer");
}

std::string get_string(const json& obj, const char* key, const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_string()) throw ConfigError(std::string("'") + key + "' must be a string");
    return obj.at(key).get<std::string>();
}

bool get_bool(const json& obj, const char* key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_boolean()) throw ConfigError(std::string("'") + key + "' must be true or false");
    return obj.at(key).get<bool>();
}

Interval parse_interval(const json& v, bool open, const std::string& where) {
    if (!v.is_array() || v.size() != 2) throw ConfigError(where + " must be a [lo, hi] pair");
    const double lo = as_number(v[0], where), hi = as_number(v[1], where);
    if (!(lo <= hi)) throw ConfigError(where + " needs lo <= hi");
    return open ? Interval::open(lo, hi) : Interval::closed(lo, hi);
}

Rational parse_rational(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>(), 1);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
        throw ConfigError(where + " must be an integer or a [num, den] pair");
    return Rational(v[0].get<std::int64_t>(), v[1].get<std::int64_t>());
}

namespace {

Scalar parse_scalar(const json& v, const std::string& where) {
    if (v.is_array() && v.size() == 2) return {as_number(v[0], where), as_number(v[1], where)};
    return as_number(v, where);
}

std::int64_t parse_index(const std::string& key, const std::string& where) {
    std::size_t used = 0;
    std::int64_t k = 0;
    try {
        k = std::stoll(key, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != key.size() || key.empty()) throw ConfigError("bad index '" + key + "' in " + where);
    return k;
}

WeightRule rule_of(const json& v, const std::string& where) {
    if (!v.is_string()) throw ConfigError(where + " must be a weight token string");
    return WeightRule::parse(v.get<std::string>());
}

void apply_table(WeightSequence& w, const json& obj) {
    if (!obj.contains("table")) return;
    const json& t = obj.at("table");
    if (!t.is_object()) throw ConfigError("weight table must map indices to values");
    for (const auto& [key, value] : t.items()) w.override_at(parse_index(key, "weight table"), parse_scalar(value, "weight table"));
}

}  // namespace

WeightSequence parse_weights(const json& v, Side side) {
    if (v.is_string()) {
        if (side == Side::Bilateral) throw ConfigError("bilateral weights need {\"negative\": ..., \"positive\": ...}");
        return WeightSequence::unilateral(WeightRule::parse(v.get<std::string>()));
    }
    if (side == Side::Unilateral) {
        expect_keys(v, {"rule", "table"}, "weights");
        WeightSequence w = WeightSequence::unilateral(rule_of(v.at("rule"), "weights.rule"));
        apply_table(w, v);
        return w;
    }
    expect_keys(v, {"negative", "positive", "table"}, "weights");
    if (!v.contains("negative")) throw ConfigError("bilateral weights need a 'negative' rule");
    WeightRule pos = v.contains("positive") ? rule_of(v.at("positive"), "weights.positive") : WeightRule::constant(2);
    WeightSequence w = WeightSequence::bilateral(rule_of(v.at("negative"), "weights.negative"), pos);
    apply_table(w, v);
    return w;
}

SpaceSpec parse_space(const json& v, Side side) {
    expect_keys(v, {"space", "p", "matrix", "ladder"}, "space");
    const std::string kind = get_string(v, "space", "lp");
    const double p = get_number(v, "p", kind == "lp" ? 2.0 : 1.0);
    if (kind == "lp") return SpaceSpec::lp(p, side);
    if (kind != "kothe") throw ConfigError("space must be 'lp' or 'kothe'");
    const std::string m = get_string(v, "matrix", "ENTIRE");
    if (m == "ENTIRE") return SpaceSpec::kothe(std::make_shared<KotheMatrix>(KotheMatrix::entire()), p);
    if (m == "POWER") {
        if (!v.contains("ladder") || !v.at("ladder").is_array()) throw ConfigError("POWER matrix needs a ladder array");
        std::vector<double> ladder;
        for (const auto& x : v.at("ladder")) ladder.push_back(as_number(x, "ladder"));
        return SpaceSpec::kothe(std::make_shared<KotheMatrix>(KotheMatrix::power(ladder)), p);
    }
    throw ConfigError("matrix must be 'ENTIRE' or 'POWER'");
}

OperatorFamily parse_family(const json& v) {
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "lambdaB") return OperatorFamily::lambda_b();
        if (s == "CS") return OperatorFamily::cs();
        if (s == "diff") return OperatorFamily::diff();
        throw ConfigError("unknown family preset '" + s + "'");
    }
    expect_keys(v, {"preset", "p", "weights", "space", "side", "action", "lambda", "coeffs", "grid"}, "family");
    OperatorFamily fam = [&]() {
        if (v.contains("preset")) {
            const std::string s = get_string(v, "preset", "");
            const double p = get_number(v, "p", 2);
            if (s == "lambdaB") return OperatorFamily::lambda_b(p);
            if (s == "CS") return OperatorFamily::cs(p);
            if (s == "diff") return OperatorFamily::diff();
            throw ConfigError("unknown family preset '" + s + "'");
        }
        const std::string side_s = get_string(v, "side", "uni");
        if (side_s != "uni" && side_s != "bi") throw ConfigError("side must be 'uni' or 'bi'");
        const Side side = side_s == "bi" ? Side::Bilateral : Side::Unilateral;
        if (!v.contains("weights")) throw ConfigError("family needs 'weights' or a 'preset'");
        WeightSequence w = parse_weights(v.at("weights"), side);
        SpaceSpec space = v.contains("space") ? parse_space(v.at("space"), side) : SpaceSpec::lp(2, side);
        if (!v.contains("lambda")) throw ConfigError("family needs a 'lambda' parameter interval");
        Interval range = parse_interval(v.at("lambda"), true, "family.lambda");
        const std::string action = get_string(v, "action", "iterate");
        if (action == "poly") {
            if (!v.contains("coeffs") || !v.at("coeffs").is_array()) throw ConfigError("poly family needs 'coeffs'");
            std::vector<Scalar> c;
            for (const auto& x : v.at("coeffs")) c.push_back(parse_scalar(x, "coeffs"));
            return OperatorFamily::poly_shift(c, w, space, range);
        }
        if (action != "iterate" && action != "direct") throw ConfigError("action must be iterate, direct or poly");
        return OperatorFamily::shift(w, space, action == "iterate" ? OperatorFamily::Action::Iterate
                                                                   : OperatorFamily::Action::Direct,
                                     range);
    }();
    if (v.contains("grid")) fam.set_grid(OperatorFamily::Envelope::Grid, static_cast<int>(get_int(v, "grid", 101)));
    return fam;
}

SeqVector parse_vector(const json& v, Side side) {
    if (v.is_object() && v.contains("file")) {
        expect_keys(v, {"file", "pointer"}, "vector reference");
        const std::string path = get_string(v, "file", "");
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open vector file '" + path + "'");
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError("vector file '" + path + "' is not JSON: " + e.what());
        }
        const json::json_pointer ptr(get_string(v, "pointer", "/results/x"));
        if (!doc.contains(ptr)) throw ConfigError("vector file '" + path + "' has no entry " + ptr.to_string());
        return parse_vector(doc.at(ptr), side);
    }
    expect_keys(v, {"side", "coords"}, "vector");
    const std::string s = get_string(v, "side", side == Side::Bilateral ? "bi" : "uni");
    if (s != "uni" && s != "bi") throw ConfigError("vector side must be 'uni' or 'bi'");
    SeqVector x(s == "bi" ? Side::Bilateral : Side::Unilateral);
    if (v.contains("coords")) {
        if (!v.at("coords").is_object()) throw ConfigError("vector coords must map indices to values");
        for (const auto& [key, value] : v.at("coords").items())
            x.add_to(parse_index(key, "vector coords"), parse_scalar(value, "vector coords"));
    }
    return x;
}

IndexSequence parse_sequence(const json& v) {
    if (v.is_array()) {
        std::vector<std::int64_t> vals;
        for (const auto& x : v) {
            if (!x.is_number_integer()) throw ConfigError("sequence list entries must be integers");
            vals.push_back(x.get<std::int64_t>());
        }
        return IndexSequence::list(vals);
    }
    expect_keys(v, {"gen", "a", "b", "c", "list"}, "sequence");
    if (v.contains("list")) return parse_sequence(v.at("list"));
    const std::string gen = get_string(v, "gen", "");
    if (gen == "affine") return IndexSequence::affine(get_int(v, "a", 1), get_int(v, "b", 0));
    if (gen == "quadratic") return IndexSequence::quadratic(get_int(v, "a", 1), get_int(v, "b", 0), get_int(v, "c", 0));
    if (gen == "naturals") return IndexSequence::naturals();
    throw ConfigError("sequence needs 'gen' (affine, quadratic, naturals) or 'list'");
}

TailCertificate parse_tail(const json& v) {
    TailCertificate t;
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "auto") return t;
        if (s == "none") { t.kind = TailCertificate::Kind::None; return t; }
        if (s == "telescoping") { t.kind = TailCertificate::Kind::Telescoping; return t; }
        throw ConfigError("tail must be auto, none, telescoping or an object");
    }
    expect_keys(v, {"kind", "q", "exponent"}, "tail");
    const std::string k = get_string(v, "kind", "auto");
    if (k == "geometric") {
        t.kind = TailCertificate::Kind::Geometric;
        t.q = get_number(v, "q", 0);
    } else if (k == "p-series") {
        t.kind = TailCertificate::Kind::PSeries;
        t.exponent = get_number(v, "exponent", 0);
    } else if (k == "telescoping") {
        t.kind = TailCertificate::Kind::Telescoping;
    } else if (k == "none") {
        t.kind = TailCertificate::Kind::None;
    } else if (k != "auto") {
        throw ConfigError("unknown tail kind '" + k + "'");
    }
    return t;
}

json num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

json to_json(const Rational& r) { return json::array({r.num(), r.den()}); }

json to_json(const SeqVector& x) {
    json coords = json::object();
    for (const auto& [k, v] : x.coords()) {
        if (v.imag() == 0) coords[std::to_string(k)] = num(v.real());
        else coords[std::to_string(k)] = json::array({num(v.real()), num(v.imag())});
    }
    return {{"side", side_name(x.side())}, {"coords", coords}};
}

json to_json(const Verdict& v) {
    json j = {{"predicate", v.predicate}, {"verdict", verdict_name(v.value)}, {"Q", num(v.Q)}, {"tau", v.tau}};
    json h = json::object(), w = json::object();
    for (const auto& [k, x] : v.horizon) h[k] = num(x);
    for (const auto& [k, x] : v.witness) w[k] = num(x);
    j["horizon"] = h;
    j["witness"] = w;
    if (!v.profile.empty()) {
        json p = json::array();
        for (double x : v.profile) p.push_back(num(x));
        j["profile"] = p;
    }
    if (!v.note.empty()) j["note"] = v.note;
    if (!v.parts.empty()) {
        json parts = json::array();
        for (const auto& part : v.parts) parts.push_back(to_json(part));
        j["parts"] = parts;
    }
    return j;
}

json to_json(const DensityReport& d) {
    return {{"lower", to_json(d.lower)},
            {"upper", to_json(d.upper)},
            {"at_horizon", to_json(d.at_horizon)},
            {"lower_value", d.lower.to_double()},
            {"upper_value", d.upper.to_double()},
            {"horizon", d.horizon},
            {"window_start", d.window_start},
            {"count", d.count},
            {"exact", d.exact},
            {"degenerate", d.degenerate}};
}

json to_json(const Interval& k) {
    return {{"lo", num(k.lo)}, {"hi", num(k.hi)}, {"lo_open", k.lo_open}, {"hi_open", k.hi_open}};
}

}  // namespace hyperlab::cli

#include "voigt/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>

#include <json.hpp>

#include "voigt/errors.hpp"
#include "voigt/report_io.hpp"
#include "voigt/summation.hpp"

namespace voigt {

double StripConfig::q() const {
    return std::numbers::pi * std::numbers::pi / (2.0 * l * l);
}

double StripConfig::b() const { return q() * epsilon; }

double StripConfig::k_threshold() const {
    return 2.0 * c * l / (std::numbers::pi * epsilon);
}

double TimeDependence::operator()(double t) const {
    switch (kind) {
        case Kind::Constant: return 1.0;
        case Kind::ExpDecay: return std::exp(-rate * t);
        case Kind::Cosine: return std::cos(frequency * t);
        case Kind::Table: {
            if (knots.empty()) return 0.0;
            if (t <= knots.front()) return values.front();
            if (t >= knots.back()) return values.back();
            const auto it = std::upper_bound(knots.begin(), knots.end(), t);
            const size_t hi = static_cast<size_t>(it - knots.begin());
            const size_t lo = hi - 1;
            const double span = knots[hi] - knots[lo];
            const double w = (t - knots[lo]) / span;
            return values[lo] + w * (values[hi] - values[lo]);
        }
    }
    return 0.0;
}

TimeDependence TimeDependence::constant() { return {}; }

TimeDependence TimeDependence::exp_decay(double rate) {
    TimeDependence td;
    td.kind = Kind::ExpDecay;
    td.rate = rate;
    return td;
}

TimeDependence TimeDependence::cosine(double frequency) {
    TimeDependence td;
    td.kind = Kind::Cosine;
    td.frequency = frequency;
    return td;
}

TimeDependence TimeDependence::table(std::vector<double> knots, std::vector<double> values) {
    TimeDependence td;
    td.kind = Kind::Table;
    td.knots = std::move(knots);
    td.values = std::move(values);
    return td;
}

int SineSeriesFn::max_mode() const {
    return modes.empty() ? 0 : modes.back().n;
}

double SineSeriesFn::time_factor(double t) const {
    return time ? (*time)(t) : 1.0;
}

double sin_mode(int n, double x, double l) {
    if (x == 0.0 || x == l) return 0.0;
    return std::sin(std::numbers::pi * static_cast<double>(n) * x / l);
}

double eval_sine_series(const SineSeriesFn& fn, double l, double x, double t) {
    if (!(x >= 0.0 && x <= l)) {
        throw OutOfDomain("x = " + std::to_string(x) + " outside [0, " + std::to_string(l) + "]");
    }
    const double factor = fn.time_factor(t);
    KahanSum sum;
    for (const auto& mode : fn.modes) {
        sum.add(mode.a * factor * sin_mode(mode.n, x, l));
    }
    return sum.value();
}

Grid Grid::uniform(const StripConfig& cfg, int nx, int nt) {
    if (nx < 2 || nt < 2) throw ValidationError("grid needs nx >= 2 and nt >= 2");
    Grid g;
    g.nx = nx;
    g.nt = nt;
    g.l = cfg.l;
    g.t_max = cfg.t_max;
    g.x_points.resize(static_cast<size_t>(nx));
    g.t_points.resize(static_cast<size_t>(nt));
    const double dx = cfg.l / (nx - 1);
    for (int i = 0; i < nx; ++i) g.x_points[static_cast<size_t>(i)] = i * dx;
    g.x_points.front() = 0.0;
    g.x_points.back() = cfg.l;
    const double dt = cfg.t_max / (nt - 1);
    for (int j = 0; j < nt; ++j) g.t_points[static_cast<size_t>(j)] = j * dt;
    g.t_points.front() = 0.0;
    g.t_points.back() = cfg.t_max;
    return g;
}

FieldGrid FieldGrid::zeros(const Grid& grid) {
    FieldGrid f;
    f.grid = grid;
    f.values.assign(static_cast<size_t>(grid.nx) * static_cast<size_t>(grid.nt), 0.0);
    return f;
}

std::vector<int> Problem::active_modes() const {
    std::set<int> all;
    for (const auto& m : f0.modes) all.insert(m.n);
    for (const auto& m : f1.modes) all.insert(m.n);
    for (const auto& m : f.modes) all.insert(m.n);
    return {all.begin(), all.end()};
}

namespace {

void check_series(const SineSeriesFn& fn, const StripConfig& cfg, const std::string& field,
                  std::vector<ValidationIssue>& issues) {
    int prev = 0;
    for (const auto& mode : fn.modes) {
        if (mode.n < 1) {
            issues.push_back({IssueCode::BoundaryViolation, field,
                              field + ": mode index " + std::to_string(mode.n) + " < 1"});
        } else if (mode.n <= prev) {
            issues.push_back({IssueCode::BoundaryViolation, field,
                              field + ": mode indices must be strictly increasing (" +
                                  std::to_string(mode.n) + " after " + std::to_string(prev) + ")"});
        }
        prev = mode.n;
    }
    if (fn.time && fn.time->kind == TimeDependence::Kind::Table) {
        if (fn.time->knots.empty() || fn.time->values.empty()) {
            issues.push_back({IssueCode::EmptyData, field, field + ": empty time table"});
        } else if (fn.time->knots.size() != fn.time->values.size()) {
            issues.push_back({IssueCode::EmptyData, field, field + ": time table length mismatch"});
        } else if (std::adjacent_find(fn.time->knots.begin(), fn.time->knots.end(),
                                      std::greater_equal<double>()) != fn.time->knots.end()) {
            issues.push_back({IssueCode::BoundaryViolation, field,
                              field + ": time table knots must be strictly increasing"});
        }
    }
    // Sine series vanish at the ends by construction; assert it anyway.
    if (cfg.l > 0.0 && issues.empty()) {
        if (eval_sine_series(fn, cfg.l, 0.0, 0.0) != 0.0 ||
            eval_sine_series(fn, cfg.l, cfg.l, 0.0) != 0.0) {
            issues.push_back({IssueCode::BoundaryViolation, field,
                              field + ": series does not vanish at the strip ends"});
        }
    }
}

} // namespace

Validation validate_config(const Problem& problem) {
    Validation v;
    const StripConfig& cfg = problem.cfg;
    auto require_positive = [&v](double value, const char* name) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            v.issues.push_back({IssueCode::NonPositiveParameter, name,
                                std::string(name) + " must be positive"});
        }
    };
    require_positive(cfg.epsilon, "epsilon");
    require_positive(cfg.c, "c");
    require_positive(cfg.l, "l");
    require_positive(cfg.t_max, "t_max");

    if (v.ok()) {
        check_series(problem.f0, cfg, "f0", v.issues);
        check_series(problem.f1, cfg, "f1", v.issues);
        check_series(problem.f, cfg, "f", v.issues);
        v.k = cfg.k_threshold();
        const double nearest = std::round(v.k);
        v.k_is_integer = std::abs(v.k - nearest) <= 1e-12 * v.k && nearest >= 1.0;
        v.n_split = v.k_is_integer ? static_cast<int>(nearest)
                                   : static_cast<int>(std::floor(v.k));
    }
    return v;
}

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool ok = false;
        for (const char* name : allowed) {
            if (key == name) {
                ok = true;
                break;
            }
        }
        if (!ok) throw ValidationError("unknown field '" + key + "' in " + where);
    }
}

double get_number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ValidationError("missing field '" + std::string(key) + "' in " + where);
    const json& v = obj.at(key);
    if (!v.is_number()) throw ValidationError("field '" + std::string(key) + "' must be a number");
    return v.get<double>();
}

std::vector<SineSeriesFn::Mode> parse_modes(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw ValidationError(where + " must be an array of [n, a] pairs");
    std::vector<SineSeriesFn::Mode> modes;
    modes.reserve(arr.size());
    for (const auto& pair : arr) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            throw ValidationError(where + " entries must be [n, a] number pairs");
        }
        const double n_raw = pair[0].get<double>();
        const int n = static_cast<int>(n_raw);
        if (static_cast<double>(n) != n_raw) {
            throw ValidationError(where + ": mode index must be an integer");
        }
        modes.push_back({n, pair[1].get<double>()});
    }
    return modes;
}

TimeDependence parse_time(const json& obj) {
    if (!obj.is_object()) throw ValidationError("f.time must be an object");
    if (!obj.contains("kind")) throw ValidationError("f.time requires 'kind'");
    const std::string kind = obj.at("kind").get<std::string>();
    if (kind == "constant") {
        reject_unknown(obj, {"kind"}, "f.time");
        return TimeDependence::constant();
    }
    if (kind == "exp_decay") {
        reject_unknown(obj, {"kind", "rate"}, "f.time");
        return TimeDependence::exp_decay(get_number(obj, "rate", "f.time"));
    }
    if (kind == "cosine") {
        reject_unknown(obj, {"kind", "frequency"}, "f.time");
        return TimeDependence::cosine(get_number(obj, "frequency", "f.time"));
    }
    if (kind == "table") {
        reject_unknown(obj, {"kind", "t", "values"}, "f.time");
        if (!obj.contains("t") || !obj.contains("values")) {
            throw ValidationError("f.time table requires 't' and 'values' arrays");
        }
        return TimeDependence::table(obj.at("t").get<std::vector<double>>(),
                                     obj.at("values").get<std::vector<double>>());
    }
    throw ValidationError("f.time.kind must be one of constant|exp_decay|cosine|table");
}

} // namespace

Problem parse_problem(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("problem file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("problem file must be a JSON object");
    reject_unknown(doc, {"epsilon", "c", "l", "t_max", "f0", "f1", "f"}, "problem");

    Problem p;
    p.cfg.epsilon = get_number(doc, "epsilon", "problem");
    p.cfg.c = get_number(doc, "c", "problem");
    p.cfg.l = get_number(doc, "l", "problem");
    p.cfg.t_max = get_number(doc, "t_max", "problem");

    if (doc.contains("f0")) p.f0.modes = parse_modes(doc.at("f0"), "f0");
    if (doc.contains("f1")) p.f1.modes = parse_modes(doc.at("f1"), "f1");
    if (doc.contains("f")) {
        const json& f = doc.at("f");
        if (!f.is_object()) throw ValidationError("f must be an object {modes, time}");
        reject_unknown(f, {"modes", "time"}, "f");
        if (f.contains("modes")) p.f.modes = parse_modes(f.at("modes"), "f.modes");
        if (f.contains("time")) p.f.time = parse_time(f.at("time"));
    }
    return p;
}

Problem load_problem(const std::string& path) {
    return parse_problem(read_text_file(path));
}

namespace {

JsonValue modes_json(const SineSeriesFn& fn) {
    JsonValue arr = JsonValue::array();
    for (const auto& m : fn.modes) {
        JsonValue pair = JsonValue::array();
        pair.push(JsonValue::integer(m.n));
        pair.push(JsonValue::number(m.a));
        arr.push(std::move(pair));
    }
    return arr;
}

} // namespace

std::string problem_to_json(const Problem& problem) {
    return problem_json_value(problem).dump();
}

JsonValue problem_json_value(const Problem& problem) {
    JsonValue root = JsonValue::object();
    root.set("epsilon", JsonValue::number(problem.cfg.epsilon));
    root.set("c", JsonValue::number(problem.cfg.c));
    root.set("l", JsonValue::number(problem.cfg.l));
    root.set("t_max", JsonValue::number(problem.cfg.t_max));
    root.set("f0", modes_json(problem.f0));
    root.set("f1", modes_json(problem.f1));
    JsonValue f = JsonValue::object();
    f.set("modes", modes_json(problem.f));
    if (problem.f.time) {
        const TimeDependence& td = *problem.f.time;
        JsonValue t = JsonValue::object();
        switch (td.kind) {
            case TimeDependence::Kind::Constant:
                t.set("kind", JsonValue::string("constant"));
                break;
            case TimeDependence::Kind::ExpDecay:
                t.set("kind", JsonValue::string("exp_decay"));
                t.set("rate", JsonValue::number(td.rate));
                break;
            case TimeDependence::Kind::Cosine:
                t.set("kind", JsonValue::string("cosine"));
                t.set("frequency", JsonValue::number(td.frequency));
                break;
            case TimeDependence::Kind::Table: {
                t.set("kind", JsonValue::string("table"));
                JsonValue knots = JsonValue::array();
                for (double v : td.knots) knots.push(JsonValue::number(v));
                JsonValue values = JsonValue::array();
                for (double v : td.values) values.push(JsonValue::number(v));
                t.set("t", std::move(knots));
                t.set("values", std::move(values));
                break;
            }
        }
        f.set("time", std::move(t));
    }
    root.set("f", std::move(f));
    return root;
}

} // namespace voigt

#include "esos/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace esos::io {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string trim(std::string s) {
    const auto issp = [](unsigned char c) { return std::isspace(c); };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), issp));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), issp).base(), s.end());
    return s;
}

[[noreturn]] void fail_row(int line_no, const std::string& msg) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": " + msg);
}

double parse_double(const std::string& raw, int line_no, const char* what) {
    const std::string s = trim(raw);
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail_row(line_no, std::string("cannot parse ") + what + " '" + s + "'");
    }
}

int parse_int(const std::string& raw, int line_no, const char* what) {
    const std::string s = trim(raw);
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail_row(line_no, std::string("cannot parse ") + what + " '" + s + "'");
    }
}

// Reads comment lines, returning the value of a `# n=<int>` comment if seen.
int scan_header_comment(const std::string& line) {
    std::string s = trim(line.substr(1));
    if (s.rfind("n=", 0) == 0) return std::stoi(s.substr(2));
    return 0;
}

}  // namespace

Dataset parse_dataset_csv(std::istream& in, int n_override) {
    std::string line;
    int line_no = 0;
    int n = n_override;
    bool header_seen = false;

    struct Event {
        double time;
        int component;
        int line_no;
    };
    std::map<int, std::map<int, Event>> trials;  // trial -> level -> event

    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        if (stripped[0] == '#') {
            if (const int hn = scan_header_comment(stripped)) n = n_override ? n : hn;
            continue;
        }
        if (!header_seen) {
            if (stripped != "trial,level,time,component")
                fail_row(line_no, "expected header 'trial,level,time,component'");
            header_seen = true;
            continue;
        }
        const auto fields = split_csv(stripped);
        if (fields.size() != 4) fail_row(line_no, "expected 4 fields");
        const int trial = parse_int(fields[0], line_no, "trial");
        const int level = parse_int(fields[1], line_no, "level");
        const double time = parse_double(fields[2], line_no, "time");
        const int component = parse_int(fields[3], line_no, "component");
        if (trial < 1) fail_row(line_no, "trial must be >= 1");
        if (level < 1) fail_row(line_no, "level must be >= 1");
        if (!trials[trial].emplace(level, Event{time, component, line_no}).second)
            fail_row(line_no, "duplicate (trial " + std::to_string(trial) + ", level " +
                                  std::to_string(level) + ")");
    }
    if (!header_seen) throw std::runtime_error("dataset file has no header row");
    if (trials.empty()) throw std::runtime_error("dataset file has no data rows");
    if (n <= 0)
        throw std::runtime_error("system size unknown: add a '# n=<int>' comment or pass --n");

    const int r = static_cast<int>(trials.size());
    const int s = static_cast<int>(trials.begin()->second.size());
    Dataset d;
    d.n = n;
    for (int trial = 1; trial <= r; ++trial) {
        const auto it = trials.find(trial);
        if (it == trials.end())
            throw std::runtime_error("trial " + std::to_string(trial) + " is missing");
        const auto& levels = it->second;
        if (static_cast<int>(levels.size()) != s)
            throw std::runtime_error("trial " + std::to_string(trial) + " has " +
                                     std::to_string(levels.size()) + " levels, expected " +
                                     std::to_string(s));
        Observation obs;
        for (int level = 1; level <= s; ++level) {
            const auto lit = levels.find(level);
            if (lit == levels.end())
                throw std::runtime_error("trial " + std::to_string(trial) + " is missing level " +
                                         std::to_string(level));
            obs.times.push_back(lit->second.time);
            obs.sources.push_back(lit->second.component);
        }
        try {
            validate(obs, n);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("trial " + std::to_string(trial) + ": " + e.what());
        }
        d.observations.push_back(std::move(obs));
    }
    return d;
}

Dataset parse_dataset_csv_file(const std::string& path, int n_override) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file '" + path + "'");
    try {
        return parse_dataset_csv(in, n_override);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_dataset_csv(std::ostream& out, const Dataset& d) {
    validate(d);
    out << "# n=" << d.n << "\n";
    out << "trial,level,time,component\n";
    out << std::setprecision(17);
    for (int i = 0; i < d.r(); ++i) {
        const auto& obs = d.observations[i];
        for (int k = 1; k <= obs.depth(); ++k)
            out << (i + 1) << ',' << k << ',' << obs.times[k - 1] << ',' << obs.sources[k - 1]
                << "\n";
    }
}

void write_dataset_csv_file(const std::string& path, const Dataset& d) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write dataset file '" + path + "'");
    write_dataset_csv(out, d);
}

Dataset parse_dataset_wide_csv(std::istream& in, int n_override) {
    std::string line;
    int line_no = 0;
    int n = n_override;
    std::map<int, std::vector<double>> times;  // level -> per-trial
    std::map<int, std::vector<int>> sources;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        if (stripped[0] == '#') {
            if (const int hn = scan_header_comment(stripped)) n = n_override ? n : hn;
            continue;
        }
        auto fields = split_csv(stripped);
        if (fields.size() < 2) fail_row(line_no, "expected a label and at least one value");
        const std::string label = trim(fields[0]);
        if (label.size() < 2 || (label[0] != 'x' && label[0] != 'c'))
            fail_row(line_no, "row label must be x<k> or c<k>");
        const int level = parse_int(label.substr(1), line_no, "level label");
        for (std::size_t i = 1; i < fields.size(); ++i) {
            if (label[0] == 'x')
                times[level].push_back(parse_double(fields[i], line_no, "time"));
            else
                sources[level].push_back(parse_int(fields[i], line_no, "component"));
        }
    }
    if (times.empty()) throw std::runtime_error("wide dataset has no x rows");
    if (n <= 0)
        throw std::runtime_error("system size unknown: add a '# n=<int>' comment or pass --n");

    const int s = static_cast<int>(times.size());
    const int r = static_cast<int>(times.begin()->second.size());
    Dataset d;
    d.n = n;
    for (int i = 0; i < r; ++i) {
        Observation obs;
        for (int k = 1; k <= s; ++k) {
            const auto xit = times.find(k);
            const auto cit = sources.find(k);
            if (xit == times.end() || cit == sources.end() ||
                static_cast<int>(xit->second.size()) != r ||
                static_cast<int>(cit->second.size()) != r)
                throw std::runtime_error("wide dataset rows x" + std::to_string(k) + "/c" +
                                         std::to_string(k) + " are incomplete");
            obs.times.push_back(xit->second[i]);
            obs.sources.push_back(cit->second[i]);
        }
        d.observations.push_back(std::move(obs));
    }
    validate(d);
    return d;
}

namespace {

TransformSpec transform_from_json(const json& j) {
    TransformSpec g;
    const std::string name = j.value("transform", "identity");
    if (name == "identity") {
        g.kind = Transform::Identity;
    } else if (name == "power") {
        g.kind = Transform::Power;
        g.power_a = j.at("a").get<double>();
        if (!(g.power_a > 0)) throw std::runtime_error("power transform needs a > 0");
    } else if (name == "log") {
        g.kind = Transform::Log;
    } else {
        throw std::runtime_error("unknown transform '" + name + "'");
    }
    return g;
}

}  // namespace

RunConfig parse_config(const json& j) {
    RunConfig cfg;
    cfg.raw = j;
    cfg.scenario.n = j.at("n").get<int>();
    cfg.scenario.s = j.at("s").get<int>();
    cfg.r = j.value("r", 0);
    cfg.scenario.seed = j.value("seed", std::uint64_t{0});
    const int n = cfg.scenario.n, s = cfg.scenario.s;

    const json& b = j.at("baseline");
    const std::string family = b.value("family", "exponential");
    if (family == "exponential") {
        cfg.family = Family::Exponential;
        if (b.contains("rates"))
            cfg.scenario.baseline = BaselineSpec::exponential(b.at("rates").get<std::vector<double>>());
        else
            cfg.scenario.baseline = BaselineSpec::exponential(n, b.value("rate", 1.0));
        if (cfg.scenario.baseline.size() != n)
            throw std::runtime_error("baseline rates do not match n");
    } else if (family == "scale") {
        cfg.family = Family::Scale;
        cfg.transform = transform_from_json(b);
        cfg.baseline_rate_known = b.contains("rate");
        cfg.scenario.baseline = BaselineSpec::scale(n, cfg.transform, b.value("rate", 1.0));
    } else if (family == "location-scale") {
        cfg.family = Family::LocationScale;
        cfg.transform = transform_from_json(b);
        cfg.baseline_rate_known = false;
        cfg.scenario.baseline =
            BaselineSpec::location_scale(n, cfg.transform, b.value("mu", 0.0));
    } else {
        throw std::runtime_error("unknown baseline family '" + family + "'");
    }

    if (j.contains("alpha")) {
        const json& a = j.at("alpha");
        if (a.contains("matrix")) {
            const auto rows = a.at("matrix").get<std::vector<std::vector<double>>>();
            if (static_cast<int>(rows.size()) != n)
                throw std::runtime_error("alpha matrix must have n rows");
            ParamTable t(n, s);
            for (int jj = 1; jj <= n; ++jj) {
                if (static_cast<int>(rows[jj - 1].size()) != s)
                    throw std::runtime_error("alpha matrix must have s columns");
                for (int k = 1; k <= s; ++k) t.set(jj, k, rows[jj - 1][k - 1]);
            }
            cfg.scenario.alpha = std::move(t);
        } else if (a.contains("levels")) {
            cfg.scenario.alpha = ParamTable::by_level(n, a.at("levels").get<std::vector<double>>());
        } else if (a.contains("ptilde")) {
            cfg.scenario.alpha =
                alpha_between_factor(n, s, a.value("p", 1.0), a.at("ptilde").get<double>());
        } else if (a.contains("p1")) {
            cfg.scenario.alpha =
                alpha_level_factors(n, a.at("p1").get<double>(), a.at("p2").get<double>(),
                                    a.value("a1", 1.0));
        } else if (a.contains("p")) {
            cfg.scenario.alpha =
                alpha_within_factor(n, s, a.at("p").get<double>(), a.value("a1", 1.0));
        } else {
            throw std::runtime_error("alpha block must contain matrix, levels, p, p1/p2 or ptilde");
        }
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
        return parse_config(j);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

json estimate_to_json(const EstimateResult& unrestricted, const EstimateResult& restricted) {
    json entries = json::array();
    const auto& p = unrestricted.params;
    for (int j = 1; j <= p.n(); ++j) {
        for (int k = 1; k <= p.s(); ++k) {
            json e;
            e["component"] = j;
            e["level"] = k;
            e["m"] = unrestricted.counts.count(j, k);
            const auto u = p.at(j, k);
            const auto o = restricted.params.at(j, k);
            e["unrestricted"] = u ? json(*u) : json(nullptr);
            e["restricted"] = o ? json(*o) : json(nullptr);
            e["exists"] = u.has_value();
            entries.push_back(std::move(e));
        }
    }
    json out;
    out["schema_version"] = kSchemaVersion;
    out["n"] = p.n();
    out["s"] = p.s();
    out["r"] = unrestricted.counts.r;
    if (unrestricted.has_mu) out["mu"] = unrestricted.mu;
    out["entries"] = std::move(entries);
    return out;
}

json sequence_estimate_to_json(const EstimateResult& est) {
    json entries = json::array();
    for (const auto& [key, value] : est.params.sequence) {
        json e;
        e["component"] = key.component;
        e["prefix"] = key.prefix;
        e["level"] = key.prefix.size() + 1;
        e["estimate"] = value;
        e["m"] = est.counts.sequence.at(key);
        entries.push_back(std::move(e));
    }
    json out;
    out["schema_version"] = kSchemaVersion;
    out["n"] = est.counts.n;
    out["s"] = est.counts.s;
    out["r"] = est.counts.r;
    out["sequence_entries"] = std::move(entries);
    return out;
}

json quantile_table_to_json(const QuantileTable& q) {
    json out;
    out["schema_version"] = kSchemaVersion;
    out["probs"] = q.probs;
    out["values"] = q.values;
    out["simulations"] = q.simulations;
    out["dropped"] = q.dropped;
    out["reliable"] = q.reliable;
    return out;
}

QuantileTable quantile_table_from_json(const json& j) {
    QuantileTable q;
    q.probs = j.at("probs").get<std::vector<double>>();
    q.values = j.at("values").get<std::vector<double>>();
    q.simulations = j.value("simulations", 0);
    q.dropped = j.value("dropped", 0);
    q.reliable = j.value("reliable", true);
    if (q.probs.size() != q.values.size())
        throw std::runtime_error("quantile table probs/values length mismatch");
    return q;
}

json lrt_result_to_json(const LrtResult& res) {
    json out;
    out["schema_version"] = kSchemaVersion;
    out["statistic"] = res.statistic;
    out["level"] = res.level;
    out["critical_value"] = res.critical_value;
    out["reject"] = res.reject;
    out["quantiles"] = quantile_table_to_json(res.quantiles);
    return out;
}

}  // namespace esos::io

#include "qmet/io.hpp"

#include "qmet/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace qmet::io {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

long parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw SpecParseError("expected an integer for '" + what + "', got '" + s + "'");
    }
}

double parse_real(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw SpecParseError("expected a number for '" + what + "', got '" + s + "'");
    }
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecParseError("cannot open spec file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SpecParseError("invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

std::string require_kind(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw SpecParseError("missing string field 'kind'");
    return j["kind"].get<std::string>();
}

template <typename T>
T field(const json& j, const std::string& key) {
    if (!j.contains(key)) throw SpecParseError("missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw SpecParseError("bad value for field '" + key + "'");
    }
}

void check_args(const std::vector<std::string>& args, std::size_t lo, std::size_t hi,
                const std::string& kind) {
    if (args.size() < lo || args.size() > hi)
        throw SpecParseError("wrong argument count for '" + kind + "'");
}

} // namespace

SpectralGenerator generator_from_json(const json& j) {
    const std::string kind = require_kind(j);
    if (kind == "jz") return jz(field<int>(j, "n"));
    if (kind == "jz_pow") return jz_pow(field<int>(j, "n"), field<int>(j, "q"));
    if (kind == "n_jz") return n_jz(field<int>(j, "n"));
    if (kind == "roy_h") return roy_h(field<int>(j, "n"));
    if (kind == "roy_a") return roy_a(field<int>(j, "n"));
    if (kind == "multipass") return multipass(field<int>(j, "K"));
    if (kind == "number_fn") {
        const int cutoff = field<int>(j, "cutoff");
        if (j.contains("values")) {
            const auto v = field<std::vector<double>>(j, "values");
            if (long(v.size()) != long(cutoff) + 1)
                throw SpecParseError("field 'values' must have cutoff+1 entries");
            return number_function(cutoff, [v](int k) { return v[std::size_t(k)]; });
        }
        const int p = j.contains("power") ? field<int>(j, "power") : 1;
        return number_function(cutoff, [p](int k) { return std::pow(double(k), double(p)); });
    }
    if (kind == "sum") {
        if (!j.contains("parts") || !j["parts"].is_array() || j["parts"].empty())
            throw SpecParseError("field 'parts' must be a nonempty array");
        std::vector<SpectralGenerator> parts;
        for (const auto& p : j["parts"]) parts.push_back(generator_from_json(p));
        return composite_sum(parts);
    }
    throw SpecParseError("unknown generator kind '" + kind + "'");
}

SpectralGenerator parse_generator(const std::string& spec) {
    if (!spec.empty() && spec.front() == '@') return generator_from_json(load_json_file(spec.substr(1)));
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const auto args = colon == std::string::npos ? std::vector<std::string>{}
                                                 : split(spec.substr(colon + 1), ',');
    if (kind == "jz" || kind == "n_jz" || kind == "roy_h" || kind == "roy_a") {
        check_args(args, 1, 1, kind);
        const int n = int(parse_int(args[0], "n"));
        if (kind == "jz") return jz(n);
        if (kind == "n_jz") return n_jz(n);
        if (kind == "roy_h") return roy_h(n);
        return roy_a(n);
    }
    if (kind == "jz_pow") {
        check_args(args, 2, 2, kind);
        return jz_pow(int(parse_int(args[0], "n")), int(parse_int(args[1], "q")));
    }
    if (kind == "multipass") {
        check_args(args, 1, 1, kind);
        return multipass(int(parse_int(args[0], "K")));
    }
    if (kind == "number_fn") {
        check_args(args, 1, 2, kind);
        const int cutoff = int(parse_int(args[0], "cutoff"));
        const int p = args.size() == 2 ? int(parse_int(args[1], "power")) : 1;
        return number_function(cutoff, [p](int k) { return std::pow(double(k), double(p)); });
    }
    throw SpecParseError("unknown generator kind '" + kind + "'");
}

PureState state_from_json(const json& j) {
    const std::string kind = require_kind(j);
    if (kind == "ghz") return ghz(field<int>(j, "n"));
    if (kind == "plus_product") return plus_product(field<int>(j, "K"));
    if (kind == "coherent") {
        const double mean = field<double>(j, "mean");
        const double mass = j.contains("mass") ? field<double>(j, "mass") : 1.0 - 1e-12;
        return coherent_number_state(mean, mass);
    }
    if (kind == "minmax") {
        if (!j.contains("generator")) throw SpecParseError("missing field 'generator'");
        return minmax_superposition(generator_from_json(j["generator"]));
    }
    if (kind == "tensor") {
        if (!j.contains("parts") || !j["parts"].is_array() || j["parts"].empty())
            throw SpecParseError("field 'parts' must be a nonempty array");
        std::vector<PureState> parts;
        for (const auto& p : j["parts"]) parts.push_back(state_from_json(p));
        return tensor(parts);
    }
    if (kind == "mixture") {
        throw SpecParseError("kind 'mixture' yields a density operator; use a pure-state kind here");
    }
    throw SpecParseError("unknown state kind '" + kind + "'");
}

PureState parse_state(const std::string& spec) {
    if (!spec.empty() && spec.front() == '@') return state_from_json(load_json_file(spec.substr(1)));
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "minmax") {
        if (rest.empty()) throw SpecParseError("'minmax' needs a generator spec after the colon");
        return minmax_superposition(parse_generator(rest));
    }
    const auto args = colon == std::string::npos ? std::vector<std::string>{} : split(rest, ',');
    if (kind == "ghz") {
        check_args(args, 1, 1, kind);
        return ghz(int(parse_int(args[0], "n")));
    }
    if (kind == "plus_product") {
        check_args(args, 1, 1, kind);
        return plus_product(int(parse_int(args[0], "K")));
    }
    if (kind == "coherent") {
        check_args(args, 1, 2, kind);
        const double mean = parse_real(args[0], "mean");
        const double mass = args.size() == 2 ? parse_real(args[1], "mass") : 1.0 - 1e-12;
        return coherent_number_state(mean, mass);
    }
    throw SpecParseError("unknown state kind '" + kind + "'");
}

double round_sig(double x, int digits) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
    return std::strtod(buf, nullptr);
}

namespace {

json num(double x) { return round_sig(x); }

json num_ent(double x, bool bits) { return round_sig(bits ? x / std::numbers::ln2 : x); }

json notes_json(const std::vector<std::string>& notes) { return json(notes); }

} // namespace

json to_json(const ResourceAccount& r) {
    json j;
    j["qubits"] = r.qubits;
    j["passes"] = r.passes;
    if (r.passes_alt) j["passes_alt"] = r.passes_alt;
    if (r.qubits_alt) j["qubits_alt"] = r.qubits_alt;
    if (r.photons > 0.0) j["photons"] = num(r.photons);
    if (r.modes) j["modes"] = r.modes;
    j["copies"] = r.copies;
    j["bits"] = r.bits;
    if (!r.notes.empty()) j["notes"] = notes_json(r.notes);
    return j;
}

json to_json(const BoundReport& r, bool bits) {
    json j;
    j["schema_version"] = 1;
    j["type"] = "bound_report";
    j["preset"] = r.preset;
    j["entropy_units"] = bits ? "bits" : "nats";
    j["mi_upper_asymmetry"] = num_ent(r.mi_upper_asymmetry, bits);
    j["mi_upper_entropy"] = num_ent(r.mi_upper_entropy, bits);
    j["error_lower"] = num(r.error_lower);
    if (r.error_lower_ag_cap > 0.0) j["error_lower_ag_cap"] = num(r.error_lower_ag_cap);
    if (r.local_precision_lower > 0.0) j["local_precision_lower"] = num(r.local_precision_lower);
    j["resources"] = to_json(r.resources);
    if (!r.provenance.empty()) j["provenance"] = notes_json(r.provenance);
    return j;
}

json to_json(const EstimationReport& r, bool bits) {
    json j;
    j["schema_version"] = 1;
    j["type"] = "estimation_report";
    j["preset"] = r.preset;
    j["policy"] = r.policy;
    j["prior"] = r.prior;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["grid"] = r.grid;
    j["entropy_units"] = bits ? "bits" : "nats";
    j["eps"] = num(r.eps);
    j["eps_stderr"] = num(r.eps_stderr);
    j["eps_raw"] = num(r.eps_raw);
    j["eps_raw_stderr"] = num(r.eps_raw_stderr);
    j["holevo_variance"] = num(r.holevo);
    j["holevo_stderr"] = num(r.holevo_stderr);
    j["sharpness"] = num(r.sharpness);
    if (r.mi.bins > 0) {
        j["mutual_information"] = num_ent(r.mi.value, bits);
        j["mutual_information_stderr"] = num_ent(r.mi.stderr_value, bits);
        j["mi_bins"] = r.mi.bins;
    }
    j["asymmetry_composite"] = num_ent(r.asymmetry_composite, bits);
    j["bound_error_lower"] = num(r.bound_error_lower);
    if (r.bound_scheme > 0.0) j["bound_scheme"] = num(r.bound_scheme);
    if (r.eps_exact > 0.0) j["eps_exact"] = num(r.eps_exact);
    j["resources"] = to_json(r.resources);
    if (!r.notes.empty()) j["notes"] = notes_json(r.notes);
    return j;
}

json to_json(const ScanReport& r) {
    json j;
    j["schema_version"] = 1;
    j["type"] = "scan_report";
    j["preset"] = r.preset;
    j["fit_model"] = r.fit_model;
    json pts = json::array();
    for (const auto& p : r.points) {
        json pj;
        pj["K"] = p.K;
        pj["n"] = num(p.n);
        pj["eps"] = num(p.eps);
        pj["eps_stderr"] = num(p.eps_stderr);
        pj["bound"] = num(p.bound);
        pts.push_back(pj);
    }
    j["points"] = pts;
    j["slope"] = num(r.slope);
    j["intercept"] = num(r.intercept);
    j["r_squared"] = num(r.r_squared);
    json res = json::array();
    for (double v : r.residuals) res.push_back(num(v));
    j["residuals"] = res;
    return j;
}

void write_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
    os << "trial,phi,phi_hat,wrapped_error,n_outcomes\n";
    char buf[160];
    for (std::size_t t = 0; t < records.size(); ++t) {
        const auto& r = records[t];
        std::snprintf(buf, sizeof buf, "%zu,%.9g,%.9g,%.9g,%u\n", t, r.phase, r.estimate,
                      r.wrapped_error, r.n_outcomes);
        os << buf;
    }
}

} // namespace qmet::io

#include "ymh/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ymh {

using nlohmann::json;

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw InvalidArgument("config: missing " + where + key);
    return j.at(key);
}

int integer_entry(const json& v, const char* what) {
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_number()) {
        const double d = v.get<double>();
        if (d == std::round(d)) return static_cast<int>(d);
    }
    throw InvalidArgument(std::string("config: ") + what + " must be integers");
}

bool same_ansatz(const std::optional<AnsatzSpec>& a, const std::optional<AnsatzSpec>& b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    if (a->axis != b->axis || a->core_profile != b->core_profile || a->vortices.size() != b->vortices.size()) return false;
    for (std::size_t k = 0; k < a->vortices.size(); ++k)
        if (a->vortices[k].position != b->vortices[k].position || a->vortices[k].winding != b->vortices[k].winding)
            return false;
    return true;
}

}  // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.sites == b.sites && a.lengths == b.lengths && a.chern == b.chern && a.epsilons == b.epsilons &&
           a.tolerance == b.tolerance && a.max_iter == b.max_iter && a.seed == b.seed &&
           a.truncate_each == b.truncate_each && a.record_every == b.record_every && a.output == b.output &&
           same_ansatz(a.ansatz, b.ansatz) && a.sites_per_epsilon == b.sites_per_epsilon;
}

TorusGeometry RunConfig::geometry() const { return TorusGeometry(sites, lengths); }

ChernMatrix RunConfig::chern_matrix() const {
    std::vector<std::vector<double>> rows;
    for (const auto& r : chern) rows.emplace_back(r.begin(), r.end());
    return ChernMatrix::from_rows(rows);
}

MinimizerOptions RunConfig::minimizer_options() const {
    MinimizerOptions o;
    o.grad_tolerance = tolerance;
    o.max_iterations = max_iter;
    o.truncate_each = truncate_each;
    o.record_every = record_every;
    return o;
}

SweepOptions RunConfig::sweep_options() const {
    SweepOptions o;
    o.minimizer = minimizer_options();
    o.sites_per_epsilon = sites_per_epsilon;
    o.seed = seed;
    return o;
}

void validate(const RunConfig& c) {
    const TorusGeometry g = [&] {
        try {
            return c.geometry();
        } catch (const Error& e) {
            throw InvalidArgument(std::string("config: geometry: ") + e.what());
        }
    }();
    const int n = g.dim();
    if (static_cast<int>(c.chern.size()) != n) throw InvalidArgument("config: chern matrix must be n x n");
    for (const auto& r : c.chern)
        if (static_cast<int>(r.size()) != n) throw InvalidArgument("config: chern matrix must be n x n");
    ChernMatrix chern;
    try {
        chern = c.chern_matrix();
    } catch (const Error& e) {
        throw InvalidArgument(std::string("config: chern: ") + e.what());
    }
    if (c.epsilons.empty()) throw InvalidArgument("config: at least one epsilon required");
    for (double e : c.epsilons)
        if (!(e > 0.0)) throw InvalidArgument("config: epsilon > 0 required");
    if (!(c.tolerance > 0.0)) throw InvalidArgument("config: optimizer.tolerance > 0 required");
    if (c.max_iter <= 0) throw InvalidArgument("config: optimizer.max_iter > 0 required");
    if (c.record_every < 0) throw InvalidArgument("config: optimizer.record_every >= 0 required");
    if (c.output.empty()) throw InvalidArgument("config: output directory must be non-empty");
    if (c.sites_per_epsilon < 0.0) throw InvalidArgument("config: sweep.sites_per_epsilon >= 0 required");

    if (c.ansatz) {
        const AnsatzSpec& s = *c.ansatz;
        if (s.core_profile != "linear") throw InvalidArgument("config: ansatz.core_profile must be \"linear\"");
        if (n == 3 && (s.axis < 0 || s.axis > 2)) throw InvalidArgument("config: ansatz.axis must be 0, 1 or 2");
        int ti = 0;
        int tj = 1;
        if (n == 3) {
            ti = s.axis == 0 ? 1 : 0;
            tj = s.axis == 2 ? 1 : 2;
        }
        long total = 0;
        for (const auto& v : s.vortices) {
            if (v.position.size() != 2 && !(n == 3 && v.position.size() == 3))
                throw InvalidArgument("config: ansatz vortex position needs the transverse coordinates");
            total += v.winding;
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const long expected = (i == ti && j == tj) ? total : 0;
                if (chern(i, j) != expected)
                    throw InvalidArgument("config: ansatz windings must sum to the chern number of the transverse plane");
            }
    }
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("config: malformed JSON: ") + e.what());
    }
    RunConfig c;
    try {
        const json& geom = require(j, "geometry", "");
        for (const auto& v : require(geom, "sites", "geometry.")) c.sites.push_back(integer_entry(v, "geometry.sites"));
        c.lengths = require(geom, "lengths", "geometry.").get<std::vector<double>>();
        if (geom.contains("n") && geom.at("n").get<int>() != static_cast<int>(c.sites.size()))
            throw InvalidArgument("config: geometry.n does not match the number of site counts");

        const json& bundle = require(j, "bundle", "");
        for (const auto& row : require(bundle, "chern", "bundle.")) {
            std::vector<int> r;
            for (const auto& v : row) r.push_back(integer_entry(v, "bundle.chern entries"));
            c.chern.push_back(std::move(r));
        }

        const json& eps = require(j, "epsilon", "");
        if (eps.is_array())
            c.epsilons = eps.get<std::vector<double>>();
        else
            c.epsilons = {eps.get<double>()};

        const json& opt = require(j, "optimizer", "");
        if (!opt.contains("seed")) throw InvalidArgument("config: optimizer.seed is mandatory");
        c.seed = opt.at("seed").get<std::uint64_t>();
        c.tolerance = get_or(opt, "tolerance", c.tolerance);
        c.max_iter = get_or(opt, "max_iter", c.max_iter);
        c.truncate_each = get_or(opt, "truncate_each", c.truncate_each);
        c.record_every = get_or(opt, "record_every", c.record_every);

        c.output = get_or<std::string>(j, "output", c.output);

        if (j.contains("ansatz") && !j.at("ansatz").is_null()) {
            const json& a = j.at("ansatz");
            AnsatzSpec s;
            s.axis = get_or(a, "axis", s.axis);
            s.core_profile = get_or<std::string>(a, "core_profile", s.core_profile);
            for (const auto& v : require(a, "vortices", "ansatz.")) {
                VortexSite site;
                site.position = require(v, "position", "ansatz.vortices[].").get<std::vector<double>>();
                site.winding = integer_entry(get_or<json>(v, "winding", json(1)), "ansatz winding");
                s.vortices.push_back(std::move(site));
            }
            c.ansatz = std::move(s);
        }
        if (j.contains("sweep")) c.sites_per_epsilon = get_or(j.at("sweep"), "sites_per_epsilon", 0.0);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("config: wrong value type: ") + e.what());
    }
    validate(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidArgument("config: cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    json j;
    j["geometry"] = {{"n", c.sites.size()}, {"sites", c.sites}, {"lengths", c.lengths}};
    j["bundle"] = {{"chern", c.chern}};
    j["epsilon"] = c.epsilons;
    j["optimizer"] = {{"tolerance", c.tolerance},
                      {"max_iter", c.max_iter},
                      {"seed", c.seed},
                      {"truncate_each", c.truncate_each},
                      {"record_every", c.record_every}};
    j["output"] = c.output;
    if (c.ansatz) {
        json vs = json::array();
        for (const auto& v : c.ansatz->vortices) vs.push_back({{"position", v.position}, {"winding", v.winding}});
        j["ansatz"] = {{"axis", c.ansatz->axis}, {"core_profile", c.ansatz->core_profile}, {"vortices", vs}};
    }
    j["sweep"] = {{"sites_per_epsilon", c.sites_per_epsilon}};
    return j.dump(2) + "\n";
}

}  // namespace ymh

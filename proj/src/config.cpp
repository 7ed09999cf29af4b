#include "pindex/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <functional>

#include "pindex/error.hpp"

namespace pindex {

using namespace json_util;

namespace {

constexpr std::initializer_list<const char*> kFields = {
    "group",  "set",  "frobenius",     "x",      "epsilon",         "method",        "seed",
    "output", "rank", "histogram_prime", "ladder", "degree", "oracle_budget", "allow_uncertified"};

bool parse_decimal(const std::string& s, double& out) {
    if (s.empty() || s.size() > 64) return false;
    errno = 0;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return errno == 0 && end == s.c_str() + s.size() && std::isfinite(out);
}

std::vector<u64> get_u64_list(const ojson& j, const std::string& pointer) {
    if (!j.is_array()) error_at(pointer, "expected a list of integers");
    std::vector<u64> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_u64(j[i], pointer + "/" + std::to_string(i)));
    return out;
}

bool get_bool(const ojson& j, const std::string& pointer) {
    if (!j.is_boolean()) error_at(pointer, "expected true or false");
    return j.get<bool>();
}

}  // namespace

double RunConfig::eps() const {
    double e = 0;
    if (!parse_decimal(epsilon, e) || e <= 0) fail(ErrorKind::Validation, "/epsilon: expected a positive decimal");
    return e;
}

IndexSetSpec RunConfig::spec() const {
    if (!set) return sets::everything();
    return parse_set(*set, "/set").spec;
}

RationalGroup RunConfig::rational_group() const {
    if (group.empty()) fail(ErrorKind::Validation, "/group: missing field");
    return RationalGroup::from_strings(group);
}

FrobeniusCondition RunConfig::frobenius() const {
    if (conductor == 1) return {};
    return FrobeniusCondition::make(conductor, residues);
}

RunConfig parse_config(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const ojson::parse_error& e) {
        fail(ErrorKind::Parse, std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) fail(ErrorKind::Validation, "/: expected an object");

    RunConfig c;
    std::vector<std::string> errors;
    auto field = [&](const std::string& pointer, const std::function<void()>& f) {
        try {
            f();
        } catch (const Error& e) {
            const std::string msg = e.what();
            errors.push_back(msg.starts_with("/") ? msg : pointer + ": " + msg);
        }
    };

    field("", [&] { check_keys(j, "", kFields); });
    if (auto it = j.find("group"); it != j.end())
        field("/group", [&] {
            if (!it->is_array() || it->empty()) error_at("/group", "expected a nonempty list of rational strings");
            for (std::size_t i = 0; i < it->size(); ++i) {
                if (!(*it)[i].is_string()) error_at("/group/" + std::to_string(i), "expected a string such as \"-3/5\"");
                c.group.push_back((*it)[i].get<std::string>());
            }
            RationalGroup::from_strings(c.group);
        });
    if (auto it = j.find("set"); it != j.end()) field("/set", [&] { c.set = parse_set(*it, "/set").json; });
    if (auto it = j.find("frobenius"); it != j.end())
        field("/frobenius", [&] {
            require_object(*it, "/frobenius");
            check_keys(*it, "/frobenius", {"conductor", "residues"});
            const u64 f = get_u64(member(*it, "conductor", "/frobenius"), "/frobenius/conductor");
            std::vector<u64> res = {0};
            if (it->contains("residues")) res = get_u64_list((*it)["residues"], "/frobenius/residues");
            try {
                const FrobeniusCondition fc = FrobeniusCondition::make(f, res);
                c.conductor = fc.conductor;
                if (!fc.is_trivial()) c.residues = fc.residues;
            } catch (const Error& e) {
                error_at("/frobenius", e.what());
            }
        });
    if (auto it = j.find("x"); it != j.end())
        field("/x", [&] {
            c.x = get_u64(*it, "/x");
            if (*c.x < 2) error_at("/x", "x must be at least 2");
        });
    if (auto it = j.find("epsilon"); it != j.end())
        field("/epsilon", [&] {
            if (!it->is_string()) error_at("/epsilon", "expected a decimal string such as \"1e-8\"");
            c.epsilon = it->get<std::string>();
            double e = 0;
            if (!parse_decimal(c.epsilon, e) || e <= 0 || e >= 1) error_at("/epsilon", "expected a decimal in (0, 1)");
        });
    if (auto it = j.find("method"); it != j.end())
        field("/method", [&] {
            if (!it->is_string()) error_at("/method", "expected a string");
            try {
                c.method = parse_method(it->get<std::string>());
            } catch (const Error& e) {
                error_at("/method", e.what());
            }
        });
    if (auto it = j.find("seed"); it != j.end()) field("/seed", [&] { c.seed = get_u64(*it, "/seed"); });
    if (auto it = j.find("output"); it != j.end())
        field("/output", [&] {
            require_object(*it, "/output");
            check_keys(*it, "/output", {"path", "format"});
            if (auto p = it->find("path"); p != it->end()) {
                if (!p->is_string()) error_at("/output/path", "expected a string");
                c.output_path = p->get<std::string>();
            }
            if (auto f = it->find("format"); f != it->end()) {
                if (!f->is_string() || (*f != "json" && *f != "csv")) error_at("/output/format", "expected \"json\" or \"csv\"");
                c.output_format = f->get<std::string>();
            }
        });
    if (auto it = j.find("rank"); it != j.end())
        field("/rank", [&] {
            const u64 r = get_u64(*it, "/rank");
            if (r < 1 || r > 64) error_at("/rank", "rank must be between 1 and 64");
            c.rank = static_cast<u32>(r);
        });
    if (auto it = j.find("histogram_prime"); it != j.end())
        field("/histogram_prime", [&] {
            const u64 ell = get_u64(*it, "/histogram_prime");
            if (!is_prime(ell)) error_at("/histogram_prime", std::to_string(ell) + " is not prime");
            c.histogram_prime = ell;
        });
    if (auto it = j.find("ladder"); it != j.end())
        field("/ladder", [&] {
            c.ladder = get_u64_list(*it, "/ladder");
            if (c.ladder.empty()) error_at("/ladder", "ladder must be nonempty");
            for (std::size_t i = 0; i < c.ladder.size(); ++i)
                if (c.ladder[i] == 0 || (i && c.ladder[i] <= c.ladder[i - 1]))
                    error_at("/ladder/" + std::to_string(i), "levels must be positive and increasing");
        });
    if (auto it = j.find("degree"); it != j.end())
        field("/degree", [&] {
            require_object(*it, "/degree");
            check_keys(*it, "/degree", {"n", "m"});
            const u64 n = get_u64(member(*it, "n", "/degree"), "/degree/n");
            if (n == 0) error_at("/degree/n", "n must be positive");
            c.degree_n = n;
            if (it->contains("m")) {
                const u64 m = get_u64((*it)["m"], "/degree/m");
                if (m == 0 || m % n) error_at("/degree/m", "m must be a positive multiple of n");
                c.degree_m = m;
            }
        });
    if (auto it = j.find("oracle_budget"); it != j.end())
        field("/oracle_budget", [&] {
            c.oracle_budget = get_u64(*it, "/oracle_budget");
            if (c.oracle_budget < 1000) error_at("/oracle_budget", "budget must be at least 1000");
        });
    if (auto it = j.find("allow_uncertified"); it != j.end())
        field("/allow_uncertified", [&] { c.allow_uncertified = get_bool(*it, "/allow_uncertified"); });

    if (!errors.empty()) {
        std::string msg;
        for (const auto& e : errors) msg += (msg.empty() ? "" : "\n") + e;
        fail(ErrorKind::Validation, msg);
    }
    return c;
}

ojson config_to_json(const RunConfig& c) {
    ojson j = ojson::object();
    if (!c.group.empty()) j["group"] = c.group;
    if (c.set) j["set"] = *c.set;
    if (c.conductor != 1) j["frobenius"] = {{"conductor", c.conductor}, {"residues", c.residues}};
    if (c.x) j["x"] = *c.x;
    j["epsilon"] = c.epsilon;
    j["method"] = to_string(c.method);
    j["seed"] = c.seed;
    ojson out = ojson::object();
    if (!c.output_path.empty()) out["path"] = c.output_path;
    out["format"] = c.output_format;
    j["output"] = out;
    if (c.rank) j["rank"] = *c.rank;
    if (c.histogram_prime) j["histogram_prime"] = *c.histogram_prime;
    if (!c.ladder.empty()) j["ladder"] = c.ladder;
    if (c.degree_n) {
        ojson d = {{"n", *c.degree_n}};
        if (c.degree_m) d["m"] = *c.degree_m;
        j["degree"] = d;
    }
    j["oracle_budget"] = c.oracle_budget;
    j["allow_uncertified"] = c.allow_uncertified;
    return j;
}

std::string emit_config(const RunConfig& c) { return config_to_json(c).dump(2); }

const char* library_version() noexcept { return PINDEX_VERSION; }

}  // namespace pindex

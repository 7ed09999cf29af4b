#include "pindex/spec_json.hpp"

#include "pindex/error.hpp"

namespace pindex {

namespace json_util {

void error_at(const std::string& pointer, const std::string& message) {
    fail(ErrorKind::Validation, (pointer.empty() ? "/" : pointer) + ": " + message);
}

void require_object(const ojson& j, const std::string& pointer) {
    if (!j.is_object()) error_at(pointer, "expected an object");
}

void check_keys(const ojson& j, const std::string& pointer, std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) error_at(pointer + "/" + escape_pointer(it.key()), "unknown field");
    }
}

u64 get_u64(const ojson& j, const std::string& pointer) {
    if (!j.is_number_integer()) error_at(pointer, "expected a nonnegative integer");
    if (j.is_number_unsigned()) return j.get<u64>();
    const auto v = j.get<std::int64_t>();
    if (v < 0) error_at(pointer, "expected a nonnegative integer");
    return static_cast<u64>(v);
}

const ojson& member(const ojson& j, const char* key, const std::string& pointer) {
    auto it = j.find(key);
    if (it == j.end()) error_at(pointer + "/" + key, "missing field");
    return *it;
}

std::string escape_pointer(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~')
            out += "~0";
        else if (c == '/')
            out += "~1";
        else
            out += c;
    }
    return out;
}

}  // namespace json_util

using namespace json_util;

namespace {

u32 get_u32(const ojson& j, const std::string& pointer) {
    const u64 v = get_u64(j, pointer);
    if (v >= kInfinity) error_at(pointer, "value too large");
    return static_cast<u32>(v);
}

ValuationSet parse_vset(const ojson& j, const std::string& pointer) {
    if (!j.is_array()) error_at(pointer, "expected a list of [lo, hi] intervals");
    std::vector<Interval> ivs;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = pointer + "/" + std::to_string(i);
        const ojson& iv = j[i];
        if (!iv.is_array() || iv.size() != 2) error_at(p, "expected [lo, hi] with hi = null for infinity");
        const u32 lo = get_u32(iv[0], p + "/0");
        const u32 hi = iv[1].is_null() ? kInfinity : get_u32(iv[1], p + "/1");
        if (hi < lo) error_at(p, "interval has hi < lo");
        ivs.push_back({lo, hi});
    }
    if (ivs.empty()) error_at(pointer, "valuation set must be nonempty");
    return ValuationSet::from_intervals(std::move(ivs));
}

u64 parse_prime_key(const std::string& key, const std::string& pointer) {
    if (key.empty() || key.size() > 19 || key.find_first_not_of("0123456789") != std::string::npos)
        error_at(pointer, "expected a prime as the key");
    const u64 p = std::stoull(key);
    if (!is_prime(p)) error_at(pointer, key + " is not prime");
    return p;
}

std::map<u64, ValuationSet> parse_prime_map(const ojson& j, const std::string& pointer) {
    require_object(j, pointer);
    std::map<u64, ValuationSet> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string p = pointer + "/" + escape_pointer(it.key());
        out[parse_prime_key(it.key(), p)] = parse_vset(it.value(), p);
    }
    return out;
}

// Builds the set, prefixing library validation errors with the pointer.
template <class F>
IndexSetSpec build(const std::string& pointer, F f) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Validation && e.kind() != ErrorKind::InvalidArgument) throw;
        error_at(pointer, e.what());
    }
}

}  // namespace

ojson vset_to_json(const ValuationSet& v) {
    ojson out = ojson::array();
    for (const auto& iv : v.intervals()) {
        ojson pair = ojson::array();
        pair.push_back(iv.lo);
        if (iv.bounded())
            pair.push_back(iv.hi);
        else
            pair.push_back(nullptr);
        out.push_back(pair);
    }
    return out;
}

SetDescription parse_set(const ojson& j, const std::string& where) {
    require_object(j, where);
    const ojson& t = member(j, "type", where);
    if (!t.is_string()) error_at(where + "/type", "expected a string");
    SetDescription d;
    d.type = t.get<std::string>();
    d.json = ojson::object();
    d.json["type"] = d.type;
    const std::string& w = where;
    if (d.type == "everything") {
        check_keys(j, w, {"type"});
        d.spec = sets::everything();
    } else if (d.type == "kfree") {
        check_keys(j, w, {"type", "k"});
        const u32 k = get_u32(member(j, "k", w), w + "/k");
        d.json["k"] = k;
        d.spec = build(w + "/k", [&] { return sets::kfree(k); });
    } else if (d.type == "klfree") {
        check_keys(j, w, {"type", "k", "primes"});
        const u32 k = get_u32(member(j, "k", w), w + "/k");
        std::map<u64, u32> kmap;
        d.json["k"] = k;
        ojson primes = ojson::object();
        if (auto it = j.find("primes"); it != j.end()) {
            require_object(*it, w + "/primes");
            for (auto p = it->begin(); p != it->end(); ++p) {
                const std::string ptr = w + "/primes/" + escape_pointer(p.key());
                const u64 ell = parse_prime_key(p.key(), ptr);
                kmap[ell] = get_u32(p.value(), ptr);
            }
        }
        for (const auto& [ell, kl] : kmap) primes[std::to_string(ell)] = kl;
        d.json["primes"] = primes;
        d.spec = build(w, [&] { return sets::klfree(kmap, k); });
    } else if (d.type == "multiples") {
        check_keys(j, w, {"type", "n"});
        const u64 n = get_u64(member(j, "n", w), w + "/n");
        d.json["n"] = n;
        d.spec = build(w + "/n", [&] { return sets::multiples_of(n); });
    } else if (d.type == "coprime") {
        check_keys(j, w, {"type", "m"});
        const u64 m = get_u64(member(j, "m", w), w + "/m");
        d.json["m"] = m;
        d.spec = build(w + "/m", [&] { return sets::coprime_to(m); });
    } else if (d.type == "gcd_equals") {
        check_keys(j, w, {"type", "m", "t"});
        const u64 m = get_u64(member(j, "m", w), w + "/m");
        const u64 t2 = get_u64(member(j, "t", w), w + "/t");
        d.json["m"] = m;
        d.json["t"] = t2;
        d.spec = build(w, [&] { return sets::gcd_equals(m, t2); });
    } else if (d.type == "single_prime") {
        check_keys(j, w, {"type", "prime", "valuations"});
        const u64 ell = get_u64(member(j, "prime", w), w + "/prime");
        const ValuationSet v = parse_vset(member(j, "valuations", w), w + "/valuations");
        d.json["prime"] = ell;
        d.json["valuations"] = vset_to_json(v);
        d.spec = build(w + "/prime", [&] { return sets::single_prime(ell, v); });
    } else if (d.type == "custom") {
        check_keys(j, w, {"type", "q0", "boxes", "default", "exceptions"});
        const u64 q0 = j.contains("q0") ? get_u64(j["q0"], w + "/q0") : 1;
        std::vector<Box> boxes;
        if (auto it = j.find("boxes"); it != j.end()) {
            if (!it->is_array()) error_at(w + "/boxes", "expected a list of boxes");
            for (std::size_t i = 0; i < it->size(); ++i) {
                const auto m = parse_prime_map((*it)[i], w + "/boxes/" + std::to_string(i));
                boxes.emplace_back(m.begin(), m.end());
            }
        }
        const ValuationSet dflt =
            j.contains("default") ? parse_vset(j["default"], w + "/default") : ValuationSet::all();
        std::map<u64, ValuationSet> ex;
        if (auto it = j.find("exceptions"); it != j.end()) ex = parse_prime_map(*it, w + "/exceptions");
        d.spec = build(w, [&] { return sets::custom(q0, boxes, dflt, ex); });
        d.json = set_to_json(d.spec);
    } else {
        error_at(w + "/type", "unknown set type \"" + d.type +
                                  "\" (expected everything, kfree, klfree, multiples, coprime, gcd_equals, "
                                  "single_prime or custom)");
    }
    return d;
}

ojson set_to_json(const IndexSetSpec& spec) {
    ojson j = ojson::object();
    j["type"] = "custom";
    j["q0"] = spec.q0();
    ojson boxes = ojson::array();
    if (spec.q0() != 1)
        for (const Box& b : spec.boxes()) {
            ojson box = ojson::object();
            for (const auto& [p, v] : b) box[std::to_string(p)] = vset_to_json(v);
            boxes.push_back(box);
        }
    j["boxes"] = boxes;
    j["default"] = vset_to_json(spec.default_vset());
    ojson ex = ojson::object();
    for (const auto& [p, v] : spec.exceptions()) ex[std::to_string(p)] = vset_to_json(v);
    j["exceptions"] = ex;
    return j;
}

}  // namespace pindex

#include <cstdio>

#include "pindex/config.hpp"
#include "pindex/empirical.hpp"
#include "pindex/error.hpp"

namespace pindex {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ojson bounded_json(const BoundedValue& b) {
    ojson j = {{"value", b.value}, {"error", b.error}, {"lo", b.lo}, {"hi", b.hi}, {"decimal", b.decimal}};
    if (!b.rational.empty()) j["rational"] = b.rational;
    return j;
}

ojson class_json(const ConvergenceClass& c) {
    ojson j = {{"class", to_string(c.kind)}, {"kappa", c.kappa_string()}};
    if (c.kind == ClassKind::KlFree || c.kind == ClassKind::VlFin) j["k"] = c.k;
    if (c.kind == ClassKind::VlFin || (c.inner && *c.inner == ClassKind::VlFin)) j["alpha"] = c.alpha.get_str();
    if (c.kind == ClassKind::FiniteQ || c.kind == ClassKind::AlmostCut) j["q"] = c.q;
    if (c.inner) j["inner"] = to_string(*c.inner);
    if (!c.reason.empty()) j["reason"] = c.reason;
    return j;
}

ojson density_json(const DensityResult& r) {
    ojson j = bounded_json(r.value);
    j["method"] = to_string(r.method);
    j["class"] = to_string(r.cls.kind);
    j["kappa"] = r.cls.kappa_string();
    ojson cut = ojson::object();
    for (const auto& [k, v] : r.cutoffs) cut[k] = v;
    j["cutoffs"] = cut;
    j["certified"] = r.certified;
    j["validation"] = {{"confirmed", r.validation.confirmed},
                       {"mismatch", r.validation.mismatch},
                       {"inconclusive", r.validation.inconclusive},
                       {"skipped", r.validation.skipped}};
    if (r.d_factor) j["D_factor"] = bounded_json(*r.d_factor);
    if (r.a_factor) j["A_factor"] = bounded_json(*r.a_factor);
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

// Expected histogram frequencies exist when ℓ is outside the entanglement
// primes and there is no Frobenius filter.
bool histogram_generic(const RationalGroup& g, u64 ell, const FrobeniusCondition& frob) {
    return frob.is_trivial() && entanglement_bound(g) % ell != 0;
}

ojson count_json(const EmpiricalCount& c, const RationalGroup& g, const FrobeniusCondition& frob) {
    ojson j = {{"x", c.x},         {"total", c.total},         {"matched", c.matched},
               {"excluded", c.excluded}, {"frob_total", c.frob_total}, {"ratio", c.ratio()},
               {"stderr", c.std_error()}};
    if (c.hist_prime) {
        const bool generic = histogram_generic(g, c.hist_prime, frob);
        ojson h = ojson::array();
        for (const auto& [v, n] : c.histogram) {
            ojson row = {{"v", v}, {"count", n}, {"freq", static_cast<double>(n) / static_cast<double>(c.total)}};
            if (generic) row["expected"] = local_density(v, g.rank(), c.hist_prime).get_d();
            h.push_back(row);
        }
        j["histogram_prime"] = c.hist_prime;
        j["histogram"] = h;
    }
    return j;
}

std::string count_csv(const EmpiricalCount& c) {
    return "x,total,matched,excluded,ratio,stderr\n" + std::to_string(c.x) + "," + std::to_string(c.total) + "," +
           std::to_string(c.matched) + "," + std::to_string(c.excluded) + "," + num(c.ratio()) + "," +
           num(c.std_error()) + "\n";
}

std::string histogram_csv(const EmpiricalCount& c, const RationalGroup& g, const FrobeniusCondition& frob) {
    const bool generic = histogram_generic(g, c.hist_prime, frob);
    std::string out = "v,count,freq,expected\n";
    for (const auto& [v, n] : c.histogram) {
        out += std::to_string(v) + "," + std::to_string(n) + "," +
               num(static_cast<double>(n) / static_cast<double>(c.total)) + ",";
        if (generic) out += num(local_density(v, g.rank(), c.hist_prime).get_d());
        out += "\n";
    }
    return out;
}

DensityOptions density_options(const RunConfig& c) {
    DensityOptions o;
    o.allow_uncertified = c.allow_uncertified;
    o.oracle_budget = c.oracle_budget;
    o.constant.allow_uncertified = c.allow_uncertified;
    return o;
}

struct DensityRun {
    DensityResult result;
    std::vector<DensityResult> sequence;  // limit method with a ladder
};

DensityRun compute_density(const RunConfig& c, const RationalGroup& g, const IndexSetSpec& spec,
                           const FrobeniusCondition& frob) {
    DensityContext ctx(g, frob, density_options(c));
    DensityRun out;
    if (c.method == Method::Limit && !c.ladder.empty()) {
        out.sequence = density_limit_sequence(spec, ctx, c.ladder);
        out.result = out.sequence.back();
        out.result.subject = subject_key(g, spec, frob);
    } else {
        out.result = density(spec, ctx, c.eps(), c.method);
    }
    return out;
}

ojson density_run_json(const DensityRun& d) {
    ojson j = density_json(d.result);
    if (!d.sequence.empty()) {
        ojson seq = ojson::array();
        for (const auto& r : d.sequence) seq.push_back(density_json(r));
        j["sequence"] = seq;
    }
    return j;
}

u64 require_x(const RunConfig& c) {
    if (!c.x) fail(ErrorKind::Validation, "/x: missing field");
    return *c.x;
}

RunResult run_density(const RunConfig& c, ojson& res, bool strict) {
    const RationalGroup g = c.rational_group();
    const DensityRun d = compute_density(c, g, c.spec(), c.frobenius());
    res = density_run_json(d);
    RunResult out;
    const auto& r = d.result;
    out.csv = "value,error,lo,hi,method,class,certified\n" + num(r.value.value) + "," + num(r.value.error) + "," +
              num(r.value.lo) + "," + num(r.value.hi) + "," + to_string(r.method) + "," + to_string(r.cls.kind) +
              "," + (r.certified ? "true" : "false") + "\n";
    if (strict && !r.certified) out.exit_status = 1;
    return out;
}

RunResult run_count(const RunConfig& c, ojson& res) {
    const RationalGroup g = c.rational_group();
    const FrobeniusCondition frob = c.frobenius();
    const EmpiricalCount cnt = count_index_in_set(g, c.spec(), require_x(c), frob, c.histogram_prime.value_or(0));
    res = count_json(cnt, g, frob);
    RunResult out;
    out.csv = count_csv(cnt);
    if (c.histogram_prime) out.histogram_csv = histogram_csv(cnt, g, frob);
    return out;
}

RunResult run_compare(const RunConfig& c, ojson& res, bool strict) {
    const RationalGroup g = c.rational_group();
    const FrobeniusCondition frob = c.frobenius();
    const IndexSetSpec spec = c.spec();
    const DensityRun d = compute_density(c, g, spec, frob);
    const EmpiricalCount cnt = count_index_in_set(g, spec, require_x(c), frob);
    const CompareReport rep = compare(cnt, d.result, frob);
    res = {{"density", density_run_json(d)},
           {"count", count_json(cnt, g, frob)},
           {"report",
            {{"empirical", rep.empirical},
             {"theoretical", rep.theoretical},
             {"theory_error", rep.theory_error},
             {"sample", rep.sample},
             {"sigma", rep.sigma},
             {"band", rep.band},
             {"deviation", rep.deviation},
             {"z", rep.z},
             {"li_x", rep.li_x},
             {"li_expected", rep.li_expected},
             {"li_deviation", rep.li_deviation},
             {"pass", rep.pass}}}};
    RunResult out;
    out.csv = "x,sample,empirical,theoretical,band,deviation,z,pass\n" + std::to_string(cnt.x) + "," +
              std::to_string(rep.sample) + "," + num(rep.empirical) + "," + num(rep.theoretical) + "," +
              num(rep.band) + "," + num(rep.deviation) + "," + num(rep.z) + "," + (rep.pass ? "true" : "false") +
              "\n";
    if (strict && (!rep.pass || !d.result.certified)) out.exit_status = 1;
    return out;
}

RunResult run_constants(const RunConfig& c, ojson& res, bool strict) {
    u32 r = 1;
    if (c.rank)
        r = *c.rank;
    else if (!c.group.empty())
        r = c.rational_group().rank();
    ConstantOptions opts;
    opts.allow_uncertified = c.allow_uncertified;
    const ConstantResult k = global_constant(c.spec(), r, c.eps(), opts);
    res = bounded_json(k.value);
    res["rank"] = r;
    res["cutoff"] = k.cutoff;
    res["tail"] = to_string(k.tail);
    res["certified"] = k.certified;
    if (!k.note.empty()) res["note"] = k.note;
    ojson f = ojson::array();
    for (const auto& [p, q] : k.special_factors) f.push_back({{"prime", p}, {"factor", q.get_str()}, {"value", q.get_d()}});
    res["factors"] = f;
    RunResult out;
    out.csv = "value,error,lo,hi,cutoff,certified\n" + num(k.value.value) + "," + num(k.value.error) + "," +
              num(k.value.lo) + "," + num(k.value.hi) + "," + std::to_string(k.cutoff) + "," +
              (k.certified ? "true" : "false") + "\n";
    if (strict && !k.certified) out.exit_status = 1;
    return out;
}

RunResult run_classify(const RunConfig& c, ojson& res) {
    const ConvergenceClass cls = classify(c.spec());
    res = class_json(cls);
    RunResult out;
    out.csv = "class,kappa\n" + std::string(to_string(cls.kind)) + "," + cls.kappa_string() + "\n";
    return out;
}

RunResult run_degree(const RunConfig& c, ojson& res, bool strict) {
    const RationalGroup g = c.rational_group();
    if (!c.degree_n) fail(ErrorKind::Validation, "/degree/n: missing field");
    const u64 n = *c.degree_n;
    const u64 m = c.degree_m.value_or(n);
    DegreeCache cache(c.oracle_budget);
    const mpz_class deg = cache.degree(g, m, n);
    const Validation v = cache.validate(g, m, n);
    res = {{"m", m},
           {"n", n},
           {"degree", deg.get_str()},
           {"defect", kummer_defect(g, m, n).get_str()},
           {"validation", to_string(v)},
           {"oracle_validated", v == Validation::Confirmed}};
    RunResult out;
    out.csv = "m,n,degree,validation\n" + std::to_string(m) + "," + std::to_string(n) + "," + deg.get_str() + "," +
              to_string(v) + "\n";
    if (strict && v == Validation::Mismatch) out.exit_status = 1;
    return out;
}

}  // namespace

RunResult run(const std::string& command, const RunConfig& config, bool strict) {
    ojson res;
    RunResult out;
    try {
        if (command == "density")
            out = run_density(config, res, strict);
        else if (command == "count")
            out = run_count(config, res);
        else if (command == "compare")
            out = run_compare(config, res, strict);
        else if (command == "constants")
            out = run_constants(config, res, strict);
        else if (command == "classify")
            out = run_classify(config, res);
        else if (command == "degree")
            out = run_degree(config, res, strict);
        else
            fail(ErrorKind::InvalidArgument, "unknown command \"" + command +
                                                 "\" (expected density, count, compare, constants, classify or degree)");
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InvalidArgument && std::string(e.what()).starts_with("unknown command")) throw;
        throw Error(e.kind(), command + ": " + e.what());
    }
    ojson art = ojson::object();
    art["command"] = command;
    art["version"] = library_version();
    art["config"] = config_to_json(config);
    art["result"] = res;
    out.artifact = art.dump(2) + "\n";
    return out;
}

}  // namespace pindex

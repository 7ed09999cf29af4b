#include "pindex/pindex.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "pindex/config.hpp"
#include "pindex/empirical.hpp"
#include "pindex/error.hpp"

struct pindex_group {
    pindex::RationalGroup g;
};
struct pindex_spec {
    pindex::IndexSetSpec s;
};
struct pindex_frob {
    pindex::FrobeniusCondition f;
};

namespace {

thread_local std::string last_error;

pindex_status code_of(pindex::ErrorKind k) {
    using pindex::ErrorKind;
    switch (k) {
        case ErrorKind::InvalidArgument: return PINDEX_E_INVALID_ARGUMENT;
        case ErrorKind::Domain: return PINDEX_E_DOMAIN;
        case ErrorKind::Validation: return PINDEX_E_VALIDATION;
        case ErrorKind::Resource: return PINDEX_E_RESOURCE;
        case ErrorKind::Statistical: return PINDEX_E_STATISTICAL;
        case ErrorKind::Ambiguous: return PINDEX_E_AMBIGUOUS;
        case ErrorKind::Unsupported: return PINDEX_E_UNSUPPORTED;
        case ErrorKind::Parse: return PINDEX_E_PARSE;
        case ErrorKind::Overflow: return PINDEX_E_OVERFLOW;
    }
    return PINDEX_E_INTERNAL;
}

template <class F>
pindex_status guard(F f) {
    last_error.clear();
    try {
        f();
        return PINDEX_OK;
    } catch (const pindex::Error& e) {
        last_error = e.what();
        return code_of(e.kind());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return PINDEX_E_RESOURCE;
    } catch (const std::exception& e) {
        last_error = e.what();
        return PINDEX_E_INTERNAL;
    }
}

void require(const void* p, const char* name) {
    if (!p) pindex::fail(pindex::ErrorKind::InvalidArgument, std::string(name) + " is NULL");
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

pindex::FrobeniusCondition frob_of(const pindex_frob* f) { return f ? f->f : pindex::FrobeniusCondition{}; }

pindex_bounded bounded_of(const pindex::BoundedValue& b) { return {b.value, b.error, b.lo, b.hi}; }

}  // namespace

extern "C" {

const char* pindex_version(void) { return PINDEX_VERSION; }

const char* pindex_last_error(void) { return last_error.c_str(); }

const char* pindex_status_string(pindex_status status) {
    switch (status) {
        case PINDEX_OK: return "ok";
        case PINDEX_E_INVALID_ARGUMENT: return "invalid argument";
        case PINDEX_E_DOMAIN: return "domain error";
        case PINDEX_E_VALIDATION: return "validation error";
        case PINDEX_E_RESOURCE: return "resource limit";
        case PINDEX_E_STATISTICAL: return "statistical error";
        case PINDEX_E_AMBIGUOUS: return "ambiguous";
        case PINDEX_E_UNSUPPORTED: return "unsupported";
        case PINDEX_E_PARSE: return "parse error";
        case PINDEX_E_OVERFLOW: return "overflow";
        case PINDEX_E_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void pindex_string_free(char* s) { std::free(s); }

pindex_status pindex_group_create(const char* const* generators, size_t count, pindex_group** out) {
    return guard([&] {
        require(out, "out");
        *out = nullptr;
        if (count) require(generators, "generators");
        std::vector<std::string> gens;
        for (size_t i = 0; i < count; ++i) {
            require(generators[i], "generator");
            gens.emplace_back(generators[i]);
        }
        *out = new pindex_group{pindex::RationalGroup::from_strings(gens)};
    });
}

void pindex_group_destroy(pindex_group* g) { delete g; }

pindex_status pindex_group_rank(const pindex_group* g, uint32_t* out) {
    return guard([&] {
        require(g, "group");
        require(out, "out");
        *out = g->g.rank();
    });
}

pindex_status pindex_spec_from_json(const char* json, pindex_spec** out) {
    return guard([&] {
        require(json, "json");
        require(out, "out");
        *out = nullptr;
        pindex::ojson j;
        try {
            j = pindex::ojson::parse(json);
        } catch (const pindex::ojson::parse_error& e) {
            pindex::fail(pindex::ErrorKind::Parse, e.what());
        }
        *out = new pindex_spec{pindex::parse_set(j, "").spec};
    });
}

void pindex_spec_destroy(pindex_spec* s) { delete s; }

pindex_status pindex_spec_contains(const pindex_spec* s, uint64_t n, int* out) {
    return guard([&] {
        require(s, "spec");
        require(out, "out");
        if (n == 0) pindex::fail(pindex::ErrorKind::InvalidArgument, "n must be positive");
        *out = s->s.contains(n) ? 1 : 0;
    });
}

pindex_status pindex_spec_g(const pindex_spec* s, uint64_t n, int* out) {
    return guard([&] {
        require(s, "spec");
        require(out, "out");
        if (n == 0) pindex::fail(pindex::ErrorKind::InvalidArgument, "n must be positive");
        *out = s->s.g(n);
    });
}

pindex_status pindex_spec_classify(const pindex_spec* s, char** out_json) {
    return guard([&] {
        require(s, "spec");
        require(out_json, "out_json");
        pindex::RunConfig c;
        c.set = pindex::set_to_json(s->s);
        const auto art = pindex::ojson::parse(pindex::run("classify", c).artifact);
        *out_json = dup(art["result"].dump());
    });
}

pindex_status pindex_frob_create(uint64_t conductor, const uint64_t* residues, size_t count, pindex_frob** out) {
    return guard([&] {
        require(out, "out");
        *out = nullptr;
        if (count) require(residues, "residues");
        std::vector<uint64_t> r(residues, residues + count);
        *out = new pindex_frob{pindex::FrobeniusCondition::make(conductor, std::move(r))};
    });
}

void pindex_frob_destroy(pindex_frob* f) { delete f; }

pindex_status pindex_degree(const pindex_group* g, uint64_t m, uint64_t n, char** out_decimal) {
    return guard([&] {
        require(g, "group");
        require(out_decimal, "out_decimal");
        *out_decimal = dup(pindex::kummer_degree(g->g, m, n).get_str());
    });
}

pindex_status pindex_degree_montecarlo(const pindex_group* g, uint64_t n, uint64_t m, uint64_t prime_budget,
                                       pindex_mc_result* out) {
    return guard([&] {
        require(g, "group");
        require(out, "out");
        const auto r = pindex::degree_montecarlo(g->g, n, prime_budget, m);
        out->degree = r.degree.fits_ulong_p() ? r.degree.get_ui() : 0;
        out->samples = r.samples;
        out->split = r.split;
        out->fraction = r.fraction;
    });
}

pindex_status pindex_index_of(const pindex_group* g, uint64_t p, uint64_t* out) {
    return guard([&] {
        require(g, "group");
        require(out, "out");
        const auto ind = pindex::index_of(g->g, p);
        if (!ind) pindex::fail(pindex::ErrorKind::Domain, std::to_string(p) + " divides a generator");
        *out = *ind;
    });
}

pindex_status pindex_density(const pindex_group* g, const pindex_spec* s, const pindex_frob* f, double eps,
                             const char* method, int allow_uncertified, pindex_density_result* out,
                             char** out_json) {
    return guard([&] {
        require(g, "group");
        require(s, "spec");
        require(out, "out");
        if (!(eps > 0 && eps < 1)) pindex::fail(pindex::ErrorKind::InvalidArgument, "eps must lie in (0, 1)");
        pindex::DensityOptions opts;
        opts.allow_uncertified = allow_uncertified != 0;
        opts.constant.allow_uncertified = opts.allow_uncertified;
        pindex::DensityContext ctx(g->g, frob_of(f), opts);
        const auto r = pindex::density(s->s, ctx, eps, method ? pindex::parse_method(method) : pindex::Method::Auto);
        out->value = bounded_of(r.value);
        out->certified = r.certified ? 1 : 0;
        if (out_json) {
            pindex::ojson j = {{"value", r.value.value},
                               {"error", r.value.error},
                               {"decimal", r.value.decimal},
                               {"method", pindex::to_string(r.method)},
                               {"class", pindex::to_string(r.cls.kind)},
                               {"kappa", r.cls.kappa_string()},
                               {"certified", r.certified}};
            if (!r.value.rational.empty()) j["rational"] = r.value.rational;
            *out_json = dup(j.dump());
        }
    });
}

pindex_status pindex_count(const pindex_group* g, const pindex_spec* s, const pindex_frob* f, uint64_t x,
                           pindex_count_result* out) {
    return guard([&] {
        require(g, "group");
        require(s, "spec");
        require(out, "out");
        const auto c = pindex::count_index_in_set(g->g, s->s, x, frob_of(f));
        *out = {c.x, c.total, c.matched, c.excluded, c.frob_total, c.ratio(), c.std_error()};
    });
}

pindex_status pindex_constant(const pindex_spec* s, uint32_t rank, double target_error, pindex_bounded* out,
                              uint64_t* out_cutoff) {
    return guard([&] {
        require(s, "spec");
        require(out, "out");
        if (rank == 0) pindex::fail(pindex::ErrorKind::InvalidArgument, "rank must be positive");
        const auto k = pindex::global_constant(s->s, rank, target_error);
        *out = bounded_of(k.value);
        if (out_cutoff) *out_cutoff = k.cutoff;
    });
}

pindex_status pindex_config_validate(const char* config_json, char** out_canonical) {
    return guard([&] {
        require(config_json, "config_json");
        const auto c = pindex::parse_config(config_json);
        if (out_canonical) *out_canonical = dup(pindex::emit_config(c));
    });
}

pindex_status pindex_run(const char* command, const char* config_json, int strict, int* out_exit,
                         char** out_artifact, char** out_csv, char** out_histogram_csv) {
    return guard([&] {
        require(command, "command");
        require(config_json, "config_json");
        require(out_artifact, "out_artifact");
        const auto r = pindex::run(command, pindex::parse_config(config_json), strict != 0);
        std::unique_ptr<char, decltype(&std::free)> art(dup(r.artifact), &std::free);
        std::unique_ptr<char, decltype(&std::free)> csv(out_csv ? dup(r.csv) : nullptr, &std::free);
        if (out_histogram_csv) *out_histogram_csv = dup(r.histogram_csv);
        if (out_csv) *out_csv = csv.release();
        *out_artifact = art.release();
        if (out_exit) *out_exit = r.exit_status;
    });
}

}  // extern "C"

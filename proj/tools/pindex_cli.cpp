// Command-line front end over the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pindex/pindex.h"

using ojson = nlohmann::ordered_json;

namespace {

struct Options {
    std::string config_path;
    std::vector<std::string> group;
    std::string set;
    std::optional<unsigned long long> x;
    std::optional<std::string> eps;
    std::optional<std::string> method;
    std::optional<unsigned long long> seed;
    bool strict = false;
    std::string out;
    std::optional<std::string> format;
    bool allow_uncertified = false;
    // count
    std::optional<unsigned long long> hist;
    std::optional<unsigned long long> conductor;
    std::vector<unsigned long long> residues;
    // constants
    std::optional<unsigned> rank;
    // degree
    std::optional<unsigned long long> n, m;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw std::runtime_error("cannot write " + path);
}

// Config file first, then command-line overrides.
ojson build_config(const Options& o) {
    ojson c = ojson::object();
    if (!o.config_path.empty()) {
        try {
            c = ojson::parse(read_file(o.config_path));
        } catch (const ojson::parse_error& e) {
            throw std::runtime_error(o.config_path + ": " + e.what());
        }
    }
    if (!o.group.empty()) c["group"] = o.group;
    if (!o.set.empty()) {
        try {
            c["set"] = ojson::parse(o.set);
        } catch (const ojson::parse_error& e) {
            throw std::runtime_error(std::string("--set: ") + e.what());
        }
    }
    if (o.x) c["x"] = *o.x;
    if (o.eps) c["epsilon"] = *o.eps;
    if (o.method) c["method"] = *o.method;
    if (o.seed) c["seed"] = *o.seed;
    if (!o.out.empty() || o.format) {
        if (!c.contains("output") || !c["output"].is_object()) c["output"] = ojson::object();
        if (!o.out.empty()) c["output"]["path"] = o.out;
        if (o.format) c["output"]["format"] = *o.format;
    }
    if (o.allow_uncertified) c["allow_uncertified"] = true;
    if (o.hist) c["histogram_prime"] = *o.hist;
    if (o.conductor) c["frobenius"] = {{"conductor", *o.conductor}, {"residues", o.residues}};
    if (o.rank) c["rank"] = *o.rank;
    if (o.n) {
        ojson d = {{"n", *o.n}};
        if (o.m) d["m"] = *o.m;
        c["degree"] = d;
    }
    return c;
}

std::string take(char* s) {
    std::string out = s ? s : "";
    pindex_string_free(s);
    return out;
}

int execute(const std::string& command, const Options& o) {
    const ojson config = build_config(o);
    char* art = nullptr;
    char* csv = nullptr;
    char* hist = nullptr;
    int exit_status = 0;
    const std::string text = config.dump();
    const pindex_status st = pindex_run(command.c_str(), text.c_str(), o.strict ? 1 : 0, &exit_status, &art, &csv, &hist);
    if (st != PINDEX_OK) {
        std::cerr << "pindex " << command << ": " << pindex_status_string(st) << "\n" << pindex_last_error() << "\n";
        return 2;
    }
    const std::string artifact = take(art), table = take(csv), histogram = take(hist);

    std::string format = "json", path;
    if (auto it = config.find("output"); it != config.end() && it->is_object()) {
        format = it->value("format", "json");
        path = it->value("path", "");
    }
    if (format == "csv") {
        if (path.empty()) {
            std::cout << table;
            if (!histogram.empty()) std::cout << "\n" << histogram;
        } else {
            write_file(path, table);
            if (!histogram.empty()) write_file(path + ".histogram.csv", histogram);
        }
    } else if (path.empty()) {
        std::cout << artifact;
    } else {
        write_file(path, artifact);
    }
    return exit_status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Densities of primes whose index lies in a prescribed set"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(pindex_version()));

    Options o;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "Run configuration (JSON)")->check(CLI::ExistingFile);
        sub->add_option("--group,-g", o.group, "Generator, e.g. 2 or -3/5 (repeatable)");
        sub->add_option("--set", o.set, "Set JSON, e.g. '{\"type\":\"kfree\",\"k\":2}'");
        sub->add_option("--x", o.x, "Prime bound for counts");
        sub->add_option("--eps", o.eps, "Target error as a decimal string");
        sub->add_option("--method", o.method, "auto, series, kfree, finiteQ, almostcut, product, single_prime, limit");
        sub->add_option("--seed", o.seed, "Seed recorded with the run");
        sub->add_flag("--strict", o.strict, "Exit 1 when a result is uncertified or a comparison fails");
        sub->add_option("--out,-o", o.out, "Output path (stdout when omitted)");
        sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_flag("--allow-uncertified", o.allow_uncertified, "Return results outside the unconditional classes");
        sub->add_option("--conductor", o.conductor, "Frobenius condition modulus f");
        sub->add_option("--residues", o.residues, "Allowed residues mod f");
    };

    auto* density = app.add_subcommand("density", "Density with a certified error bound");
    auto* count = app.add_subcommand("count", "Count primes p <= x with index in the set");
    auto* cmp = app.add_subcommand("compare", "Compare the density with a count");
    auto* constants = app.add_subcommand("constants", "Euler-product constant of the set");
    auto* classify = app.add_subcommand("classify", "Convergence class of the set");
    auto* degree = app.add_subcommand("degree", "Kummer degree [Q(zeta_m, G^(1/n)):Q] with oracle check");
    for (auto* s : {density, count, cmp, constants, classify, degree}) common(s);
    count->add_option("--hist", o.hist, "Prime l for the valuation histogram");
    constants->add_option("--rank", o.rank, "Rank r when no group is given");
    degree->add_option("--a", o.group, "Generator (repeatable)");
    degree->add_option("--n", o.n, "n")->required();
    degree->add_option("--m", o.m, "m (multiple of n, default n)");

    CLI11_PARSE(app, argc, argv);

    try {
        return execute(app.get_subcommands().front()->get_name(), o);
    } catch (const std::exception& e) {
        std::cerr << "pindex: " << e.what() << "\n";
        return 2;
    }
}

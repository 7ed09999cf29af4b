#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "pindex/config.hpp"
#include "pindex/error.hpp"

using namespace pindex;

namespace {

std::string error_of(const std::string& text, ErrorKind kind = ErrorKind::Validation) {
    try {
        parse_config(text);
    } catch (const Error& e) {
        CHECK(e.kind() == kind);
        return e.what();
    }
    FAIL("expected an error");
    return "";
}

RunConfig random_config(gen::Rng& rng) {
    RunConfig c;
    c.group = rng.pick(std::vector<std::vector<std::string>>{{"2"}, {"2", "3"}, {"-3/5"}, {"12", "18"}});
    if (rng.coin()) c.set = set_to_json(gen::spec(rng));
    if (rng.coin()) {
        c.conductor = rng.pick(std::vector<u64>{4, 5, 12});
        c.residues = {1};
    }
    if (rng.coin()) c.x = rng.uniform(2, 1'000'000'000);
    c.epsilon = rng.pick(std::vector<std::string>{"1e-8", "0.001", "2.5e-6"});
    c.method = rng.pick(std::vector<Method>{Method::Auto, Method::Series, Method::Product, Method::Limit});
    c.seed = rng.uniform(0, 1'000'000);
    if (rng.coin()) c.output_path = "out/run.json";
    c.output_format = rng.coin() ? "json" : "csv";
    if (rng.coin()) c.rank = static_cast<u32>(rng.uniform(1, 4));
    if (rng.coin()) c.histogram_prime = rng.pick(std::vector<u64>{2, 3, 7});
    if (rng.coin()) c.ladder = {2, 6, 30};
    if (rng.coin()) {
        c.degree_n = rng.uniform(1, 12);
        if (rng.coin()) c.degree_m = *c.degree_n * rng.uniform(1, 4);
    }
    c.oracle_budget = rng.uniform(1000, 5'000'000);
    c.allow_uncertified = rng.coin();
    return c;
}

}  // namespace

TEST_CASE("parse examples") {
    const auto c = parse_config(R"({"group":["2"],"set":{"type":"kfree","k":2},"x":10000000,"epsilon":"1e-8"})");
    CHECK(c.group == std::vector<std::string>{"2"});
    CHECK(c.x == 10000000u);
    CHECK(c.eps() == 1e-8);
    CHECK(c.spec() == sets::kfree(2));
    CHECK(c.method == Method::Auto);
    CHECK(c.output_format == "json");

    const auto f = parse_config(R"({"group":["5"],"frobenius":{"conductor":4,"residues":[1]},"method":"product"})");
    CHECK(f.conductor == 4);
    CHECK(f.residues == std::vector<u64>{1});
    CHECK(f.method == Method::Product);
    // Conductor 1 is the trivial condition.
    CHECK(parse_config(R"({"frobenius":{"conductor":1}})").residues.empty());
}

TEST_CASE("parse errors name every offending field") {
    const auto msg = error_of(R"({"group":["2"],"set":{"type":"kfree","k":1},"x":1,"bogus":true})");
    CHECK(msg.find("/bogus: unknown field") != std::string::npos);
    CHECK(msg.find("/set/k: k must be ≥ 2") != std::string::npos);
    CHECK(msg.find("/x: x must be at least 2") != std::string::npos);

    CHECK(error_of(R"({"group":["4","8"]})").starts_with("/group"));
    CHECK(error_of(R"({"epsilon":"2"})").starts_with("/epsilon"));
    CHECK(error_of(R"({"epsilon":1e-8})").starts_with("/epsilon"));
    CHECK(error_of(R"({"method":"fast"})").starts_with("/method"));
    CHECK(error_of(R"({"output":{"format":"xml"}})") == "/output/format: expected \"json\" or \"csv\"");
    CHECK(error_of(R"({"histogram_prime":9})") == "/histogram_prime: 9 is not prime");
    CHECK(error_of(R"({"ladder":[6,2]})").starts_with("/ladder/1"));
    CHECK(error_of(R"({"degree":{"n":4,"m":6}})") == "/degree/m: m must be a positive multiple of n");
    CHECK(error_of(R"({"frobenius":{"conductor":4,"residues":[2]}})").starts_with("/frobenius"));
    CHECK(error_of(R"({"set":{"type":"custom","q0":6,"boxes":[{"2":[[0,0]],"3":[[0,0]]}],"exceptions":{"3":[[0,0]]}}})")
              .find("divides Q0") != std::string::npos);
    error_of("{\"group\": [", ErrorKind::Parse);
    error_of("[1, 2]");
}

TEST_CASE("property: emit then parse is the identity") {
    gen::Rng rng(77);
    for (int i = 0; i < 200; ++i) {
        const RunConfig c = random_config(rng);
        const std::string text = emit_config(c);
        const RunConfig back = parse_config(text);
        REQUIRE(back == c);
        CHECK(emit_config(back) == text);
    }
}

TEST_CASE("runs are deterministic") {
    const auto c = parse_config(R"({"group":["2"],"set":{"type":"kfree","k":2},"x":200000,"epsilon":"1e-8","seed":5})");
    for (const char* cmd : {"density", "count", "compare", "classify"}) {
        CAPTURE(cmd);
        const auto a = run(cmd, c);
        const auto b = run(cmd, c);
        CHECK(a.artifact == b.artifact);
        CHECK(a.csv == b.csv);
        CHECK(a.exit_status == 0);
        const auto j = ojson::parse(a.artifact);
        CHECK(j["command"] == cmd);
        CHECK(j["version"] == library_version());
        CHECK(parse_config(j["config"].dump()) == c);
    }
}

TEST_CASE("command artifacts") {
    auto c = parse_config(R"({"group":["2"],"set":{"type":"kfree","k":2}})");
    const auto cls = ojson::parse(run("classify", c).artifact)["result"];
    CHECK(cls["class"] == "KlFree");
    CHECK(cls["kappa"] == "1/2");

    c.degree_n = 8;
    const auto deg = ojson::parse(run("degree", c).artifact)["result"];
    CHECK(deg["degree"] == "16");
    CHECK(deg["validation"] == "confirmed");

    c.output_format = "csv";
    const auto d = run("density", c);
    CHECK(d.csv.starts_with("value,error"));

    c.x = 100000;
    c.histogram_prime = 3;
    const auto cnt = run("count", c);
    CHECK(cnt.csv.starts_with("x,total,matched,excluded,ratio,stderr\n"));
    CHECK(cnt.histogram_csv.starts_with("v,count,freq,expected\n"));
    CHECK(cnt.histogram_csv.find("\n1,") != std::string::npos);
    CHECK(cnt.histogram_csv.find(",0.14814814814814814\n") != std::string::npos);

    c.ladder = {2, 6, 30};
    c.method = Method::Limit;
    const auto lim = ojson::parse(run("density", c).artifact)["result"];
    CHECK(lim["sequence"].size() == 3);
}

TEST_CASE("strict mode and failures") {
    auto c = parse_config(R"({"group":["2"],"set":{"type":"custom","default":[[0,0]]},"allow_uncertified":true,"method":"product","epsilon":"1e-6"})");
    CHECK(run("density", c, false).exit_status == 0);
    CHECK(run("density", c, true).exit_status == 1);
    c.allow_uncertified = false;
    try {
        run("density", c);
        FAIL("expected an unsupported error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Unsupported);
        CHECK(std::string(e.what()).starts_with("density: "));
    }
    CHECK_THROWS_AS(run("frobnicate", c), Error);
    try {
        run("count", parse_config(R"({"group":["2"],"set":{"type":"kfree","k":2}})"));
        FAIL("expected a missing x");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("/x: missing field") != std::string::npos);
    }
}

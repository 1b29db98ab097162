#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <string>

#include "padyn/builtin.hpp"
#include "padyn/pipeline.hpp"

using namespace padyn;

namespace {
FieldContext ctx5() { return FieldContext(5, 2); }
FieldElement fe(long n) { return FieldElement(ctx5(), n); }
HalfInt W(long long n) { return HalfInt::whole(n); }

struct TempFile {
    std::string path;
    TempFile(const std::string& name, const std::string& body) : path(name) {
        std::ofstream out(path, std::ios::binary);
        out << body;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

std::string parse_error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}
}  // namespace

TEST_CASE("map schema round trip") {
    json j = json::parse(R"({"p":5,"num":["0","-1/5","1"],"den":["-1","0","1"]})");
    RationalMap m = io::parse_map(j);
    CHECK(m.same_map(builtin::base_map(ctx5())));
    // the emitted pair is the normalized one, and re-parsing is stable
    json out = io::map_to_json(m);
    CHECK(out["p"] == 5);
    CHECK(out["num"] == json::array({"0", "-1", "5"}));
    CHECK(out["den"] == json::array({"-5", "0", "5"}));
    CHECK(io::map_to_json(io::parse_map(out)) == out);

    // bare integers are accepted alongside strings
    json mixed = json::parse(R"({"p":5,"num":[0,"-1/5",1],"den":[-1,0,1]})");
    CHECK(io::parse_map(mixed).same_map(m));
}

TEST_CASE("map schema diagnostics carry their location") {
    auto parse = [](const char* text) {
        json j = json::parse(text);
        return parse_error_of([&] { io::parse_map(j, "map"); });
    };
    CHECK(parse(R"({"p":5,"num":["1","1"]})").find("map: missing field 'den'") == 0);
    CHECK(parse(R"({"p":6,"num":["1","1"],"den":["1"]})").find("map: ") == 0);
    CHECK(parse(R"({"p":6,"num":["1","1"],"den":["1"]})").find("prime") != std::string::npos);
    CHECK(parse(R"({"p":5,"num":["1","1"],"den":["0"]})").find("zero denominator") !=
          std::string::npos);
    CHECK(parse(R"({"p":5,"num":["1","x"],"den":["1"]})") != "");
    CHECK(parse(R"({"p":5,"num":["1","1/0"],"den":["1"]})") != "");
    CHECK(parse(R"({"p":5,"num":[],"den":["1"]})").find("non-empty") != std::string::npos);
    CHECK(parse(R"({"p":5,"num":[true],"den":["1"]})") != "");
    CHECK(parse(R"([1,2])").find("expected an object") != std::string::npos);
}

TEST_CASE("region schema round trip") {
    FieldContext ctx = ctx5();
    FieldElement sqrt_center = fe(2) + FieldElement::pi_power(ctx, HalfInt::halves(1));
    std::vector<Region> regions{
        Region::disk(fe(0), W(1)),
        Region::ball(sqrt_center, HalfInt::halves(3)),
        Region::around_infinity(ctx, W(-1)),
        Region::around_infinity(ctx, HalfInt::halves(-3), false),
        Region::annulus(fe(125), W(2), W(1)),
        Region::annulus(fe(1), W(2), W(0), false, true),
    };
    for (const Region& g : regions) {
        CAPTURE(g.str());
        json j = io::region_to_json(g);
        Region back = io::parse_region(ctx, j);
        CHECK(back.same_set(g));
        CHECK(io::region_to_json(back) == j);
    }
    // the worked example's disk serializes to the documented shape
    json d = io::region_to_json(Region::disk(fe(0), W(1)));
    CHECK(d == json::parse(R"({"kind":"disk","center":"0","radius_exp":"1","open":true})"));
    json b = io::region_to_json(Region::ball(sqrt_center, HalfInt::halves(3)));
    CHECK(b["radius_exp"] == "3/2");
    CHECK(b["center"] == "2 + sqrt(5)");

    // kind decides openness unless an explicit flag overrides it
    json closed = json::parse(R"({"kind":"disk","center":"0","radius_exp":"1","open":false})");
    CHECK(io::parse_region(ctx, closed).same_set(Region::ball(fe(0), W(1))));
}

TEST_CASE("region schema diagnostics") {
    FieldContext ctx = ctx5();
    auto parse = [&](const char* text) {
        json j = json::parse(text);
        return parse_error_of([&] { io::parse_region(ctx, j, "region"); });
    };
    CHECK(parse(R"({"kind":"torus","center":"0","radius_exp":"1"})").find("unknown kind 'torus'") !=
          std::string::npos);
    CHECK(parse(R"({"kind":"disk","radius_exp":"1"})").find("missing field 'center'") !=
          std::string::npos);
    CHECK(parse(R"({"kind":"disk","center":"0","radius_exp":"1/3"})") != "");
    CHECK(parse(R"({"kind":"annulus","center":"0","inner_exp":"1","outer_exp":"2"})")
              .find("out of order") != std::string::npos);
    CHECK(parse(R"x({"kind":"disk","center":"sqrt(7)","radius_exp":"1"})x") != "");
}

TEST_CASE("params schema round trip") {
    FieldContext ctx = ctx5();
    json j = json::parse(R"({"z0":"0","mu":"25"})");
    HermanParams prm = io::parse_params(ctx, j);
    CHECK(prm.z0 == fe(0));
    CHECK(prm.mu == fe(25));
    CHECK(io::params_to_json(prm) == j);
    CHECK(parse_error_of([&] { io::parse_params(ctx, json::parse(R"({"z0":"0"})")); })
              .find("missing field 'mu'") != std::string::npos);
}

TEST_CASE("report serialization shape") {
    VerificationReport rep;
    rep.title = "demo";
    rep.add("alpha").note = "fine";
    rep.add("beta").fail("bad", "details here");
    rep.notes.push_back("remark");
    json j = io::report_to_json(rep);
    CHECK(j["title"] == "demo");
    CHECK(j["pass"] == false);
    REQUIRE(j["checks"].size() == 2);
    CHECK(j["checks"][0] == json::parse(R"({"name":"alpha","pass":true,"note":"fine"})"));
    CHECK(j["checks"][1]["witnesses"][0] ==
          json::parse(R"({"label":"bad","detail":"details here"})"));
    CHECK(j["notes"] == json::array({"remark"}));
}

TEST_CASE("file loading diagnostics") {
    CHECK(parse_error_of([] { io::load_file("no-such-file.json"); })
              .find("cannot open input file") != std::string::npos);
    TempFile bad("tmp_bad_input.json", "{\"p\": tru");
    std::string msg = parse_error_of([&] { io::load_file(bad.path); });
    CHECK(msg.find("invalid JSON in tmp_bad_input.json") == 0);
}

TEST_CASE("reproduce pipeline verifies both examples end to end") {
    for (int n : {1, 2}) {
        JobSpec spec;
        spec.command = "reproduce";
        spec.example = n;
        RunResult run = padyn::run(spec);
        CAPTURE(n);
        REQUIRE(run.exit_code == 0);
        CHECK(run.document["verdict"] == "pass");
        CHECK(run.document["tool"]["name"] == "padyn");
        CHECK(run.document["command"] == "reproduce");
        CHECK(run.document["options"]["samples"] == 32);
        CHECK(run.document["options"]["seed"] == 0);
        CHECK(run.document["options"]["precision"] == 8);
        CHECK(run.document["options"]["example"] == n);

        const json& checks = run.document["report"]["checks"];
        auto has = [&](const std::string& name) {
            for (const json& c : checks)
                if (c["name"] == name) return true;
            return false;
        };
        for (const char* name :
             {"reduction", "fixed-point-zero", "two-cycle", "siegel: disk-chain",
              "siegel-extra: disk-chain", "disk-image", "hypotheses: orbit-return",
              "constructed-map", "proximity: proximity-ring-0", "herman: pole-audit",
              "scaled-reduction"}) {
            CAPTURE(name);
            CHECK(has(name));
        }
        CHECK(has(n == 1 ? "reference-match" : "reference-discrepancy"));
        CHECK_FALSE(has(n == 1 ? "reference-discrepancy" : "reference-match"));
        for (const json& c : checks) {
            CAPTURE(c["name"].get<std::string>());
            CHECK(c["pass"] == true);
        }

        CHECK(run.document["results"]["q_degree"] == 3);
        CHECK(run.document["results"]["reference_agrees"] == (n == 1));
        CHECK(run.document["results"]["scaled_reduction"]["input_degree"] == 1);
        CHECK(run.document["results"]["scaled_reduction"]["constructed_degree"] == 2);
        if (n == 2) {
            CHECK(run.document["results"]["designed_pole"] == "150");
            // the divergence from the printed formula is documented in the notes
            REQUIRE(run.document["report"]["notes"].size() == 3);
            std::string all;
            for (const json& note : run.document["report"]["notes"])
                all += note.get<std::string>() + "\n";
            CHECK(all.find("651 is correct") != std::string::npos);
            CHECK(all.find("different rational map") != std::string::npos);
        } else {
            CHECK(run.document["results"]["designed_pole"] == "25");
            CHECK(run.document["report"]["notes"].size() == 1);
        }
    }
}

TEST_CASE("identical job specifications produce identical reports") {
    JobSpec spec;
    spec.command = "reproduce";
    spec.example = 1;
    RunResult a = padyn::run(spec);
    RunResult b = padyn::run(spec);
    CHECK(a.document.dump(2) == b.document.dump(2));
    CHECK(a.text == b.text);
    CHECK(a.exit_code == b.exit_code);
}

TEST_CASE("analyze pipeline on a good-reduction map") {
    TempFile in("tmp_zsq.json", R"({"p":5,"num":["0","0","1"],"den":["1"]})");
    JobSpec spec;
    spec.command = "analyze";
    spec.input_path = in.path;
    RunResult run = padyn::run(spec);
    REQUIRE(run.exit_code == 0);
    CHECK(run.document["results"]["reduction"]["good"] == true);
    CHECK(run.document["results"]["reduction"]["pair"] == "[X^2, Y^2]");
    CHECK(run.document["results"]["reduction"]["resultant"] == "1");
    REQUIRE(run.document["results"]["periodic_points"].size() == 2);
    const json& fixed = run.document["results"]["periodic_points"][0];
    REQUIRE(fixed["orbits"].size() == 3);
    CHECK(fixed["orbits"][0]["points"] == json::array({"0"}));
    CHECK(fixed["orbits"][0]["class"] == "super-attracting");
    CHECK(fixed["orbits"][1]["points"] == json::array({"1"}));
    CHECK(fixed["orbits"][1]["multiplier"] == "2");
    CHECK(fixed["orbits"][1]["multiplier_norm"] == "1");
    CHECK(fixed["orbits"][2]["points"] == json::array({"inf"}));
    CHECK(run.text.find("padyn 0.1.0 -- analyze") == 0);
    CHECK(run.text.find("verdict: PASS\n") != std::string::npos);
}

TEST_CASE("analyze pipeline on the worked bad-reduction map") {
    TempFile in("tmp_base.json", R"({"p":5,"num":["0","-1/5","1"],"den":["-1","0","1"]})");
    JobSpec spec;
    spec.command = "analyze";
    spec.input_path = in.path;
    RunResult run = padyn::run(spec);
    REQUIRE(run.exit_code == 0);
    CHECK(run.document["results"]["reduction"]["good"] == false);
    CHECK(run.document["results"]["reduction"]["pair"] == "[-X*Y, 0]");
    CHECK(run.document["results"]["reduction"]["resultant"] == "600");
    CHECK(run.document["results"]["reduction"]["resultant_valuation"] == "2");
    const json& fixed = run.document["results"]["periodic_points"][0];
    REQUIRE(fixed["orbits"].size() == 1);
    CHECK(fixed["orbits"][0]["multiplier"] == "1/5");
    CHECK(fixed["orbits"][0]["class"] == "repelling");
    CHECK(fixed["residual"][0]["valuation"] == "-1/2");
    CHECK(fixed["residual"][0]["count"] == 2);
    const json& two = run.document["results"]["periodic_points"][1];
    CHECK(two["infinity_periodic"] == true);
    bool found_cycle = false;
    for (const json& o : two["orbits"])
        if (o["period"] == 2 && o["multiplier"] == "-1/2" && o["class"] == "indifferent")
            found_cycle = true;
    CHECK(found_cycle);
}

TEST_CASE("verify-siegel pipeline flags the rotated labeling") {
    TempFile in("tmp_rot.json", R"({
        "map": {"p":5,"num":["5","0","-5"],"den":["5","-1"]},
        "disks": [
            {"kind":"disk","center":"1","radius_exp":"0"},
            {"kind":"disk","center":"0","radius_exp":"1"}
        ]
    })");
    JobSpec spec;
    spec.command = "verify-siegel";
    spec.input_path = in.path;
    RunResult run = padyn::run(spec);
    CHECK(run.exit_code == 1);
    CHECK(run.document["verdict"] == "fail");
    CHECK(run.document["results"]["radii"] == json::array({"1", "1/5"}));
    bool labeling_failed = false;
    for (const json& c : run.document["report"]["checks"]) {
        if (c["name"] == "radius-labeling") {
            labeling_failed = !c["pass"].get<bool>();
        } else {
            CAPTURE(c["name"].get<std::string>());
            CHECK(c["pass"] == true);
        }
    }
    CHECK(labeling_failed);
    CHECK(run.text.find("[FAIL] radius-labeling") != std::string::npos);
    CHECK(run.text.find("verdict: FAIL\n") != std::string::npos);
}

TEST_CASE("verify-siegel accepts the correctly labeled cycle") {
    TempFile in("tmp_ok.json", R"({
        "map": {"p":5,"num":["5","0","-5"],"den":["5","-1"]},
        "disks": [
            {"kind":"disk","center":"0","radius_exp":"1"},
            {"kind":"disk","center":"1","radius_exp":"0"}
        ]
    })");
    JobSpec spec;
    spec.command = "verify-siegel";
    spec.input_path = in.path;
    RunResult run = padyn::run(spec);
    CHECK(run.exit_code == 0);
    CHECK(run.document["verdict"] == "pass");
}

TEST_CASE("construct-herman output feeds verify-herman") {
    TempFile in("tmp_construct.json", R"({
        "map": {"p":5,"num":["5","0","-5"],"den":["5","-1"]},
        "disks": [
            {"kind":"disk","center":"0","radius_exp":"1"},
            {"kind":"disk","center":"1","radius_exp":"0"}
        ],
        "params": {"z0":"0","mu":"25"}
    })");
    JobSpec spec;
    spec.command = "construct-herman";
    spec.input_path = in.path;
    RunResult run = padyn::run(spec);
    REQUIRE(run.exit_code == 0);
    CHECK(run.document["results"]["q_degree"] == 3);
    CHECK(run.document["results"]["designed_pole"] == "25");
    CHECK(run.document["results"]["orbit"]["periodic"] == true);
    REQUIRE(run.document["results"]["rings"].size() == 2);

    json back;
    back["map"] = run.document["results"]["q"];
    back["rings"] = run.document["results"]["rings"];
    back["params"] = run.document["results"]["params"];
    back["base"] = run.document["results"]["map"];
    TempFile ver("tmp_verify.json", back.dump());
    JobSpec vs;
    vs.command = "verify-herman";
    vs.input_path = ver.path;
    RunResult vr = padyn::run(vs);
    CHECK(vr.exit_code == 0);
    CHECK(vr.document["verdict"] == "pass");
}

TEST_CASE("construct-herman stops when the hypotheses fail") {
    // mu as large as rho_0 leaves no room for the deleted ball
    TempFile in("tmp_bad_mu.json", R"({
        "map": {"p":5,"num":["5","0","-5"],"den":["5","-1"]},
        "disks": [
            {"kind":"disk","center":"0","radius_exp":"1"},
            {"kind":"disk","center":"1","radius_exp":"0"}
        ],
        "params": {"z0":"0","mu":"5"}
    })");
    JobSpec spec;
    spec.command = "construct-herman";
    spec.input_path = in.path;
    RunResult run = padyn::run(spec);
    CHECK(run.exit_code == 1);
    CHECK_FALSE(run.document["results"].contains("q"));
    bool found = false;
    for (const json& c : run.document["report"]["checks"])
        if (c["name"] == "hypotheses: deleted-radius" && c["pass"] == false) found = true;
    CHECK(found);
    CHECK(run.document["summary"].back() ==
          "construction hypotheses not met; no map constructed");
}

TEST_CASE("job validation rejects malformed specifications") {
    JobSpec spec;
    spec.command = "stuff";
    CHECK_THROWS_AS(padyn::run(spec), ParseError);
    spec.command = "analyze";
    CHECK(parse_error_of([&] { padyn::run(spec); }).find("--input is required") !=
          std::string::npos);
    spec.input_path = "x.json";
    spec.samples = 0;
    CHECK(parse_error_of([&] { padyn::run(spec); }) == "--samples must be positive");
    spec.samples = 32;
    spec.precision = 0;
    CHECK(parse_error_of([&] { padyn::run(spec); }) == "--precision must be positive");
    spec.precision = 8;
    spec.degree_cap = 0;
    CHECK(parse_error_of([&] { padyn::run(spec); }) == "--degree-cap must be positive");
    JobSpec rep;
    rep.command = "reproduce";
    rep.example = 3;
    CHECK_THROWS_AS(padyn::run(rep), ParseError);
}

#include <doctest.h>

#include <sstream>

#include "circon/io.hpp"

using namespace circon;

namespace {

io::InstanceFile fig1_file() {
    io::InstanceFile f;
    f.kind = io::Kind::mscs;
    f.mscs = MscsInstance{{BinaryString::parse("10011"), BinaryString::parse("11000"),
                           BinaryString::parse("01001")},
                          tabulate_builtin(Builtin::sigma, 3),
                          Rational(4, 3)};
    return f;
}

io::InstanceFile fig2_file() {
    io::InstanceFile f;
    f.kind = io::Kind::dtw;
    f.dtw = DtwInstance{{TimeSeries{{1, 10, 0, 0, 4}}, TimeSeries{{0, 2, 10, 0, 0}},
                         TimeSeries{{0, 0, 0, 10, 0}}},
                        std::nullopt};
    return f;
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("instance serialization round-trips") {
    for (const auto& file : {fig1_file(), fig2_file()}) {
        const io::json j = io::instance_to_json(file);
        const io::InstanceFile back = io::instance_from_json(j);
        CHECK(io::instance_to_json(back) == j);
    }
    io::InstanceFile rmcc;
    rmcc.kind = io::Kind::rmcc;
    rmcc.graph = complete_multipartite(3, 2);
    CHECK(io::instance_to_json(io::instance_from_json(io::instance_to_json(rmcc))) ==
          io::instance_to_json(rmcc));
    io::InstanceFile ccs;
    ccs.kind = io::Kind::ccs;
    ccs.ccs = io::CcsPayload{{BinaryString::parse("101"), BinaryString::parse("110")}, Rational(2)};
    CHECK(io::instance_to_json(io::instance_from_json(io::instance_to_json(ccs))) ==
          io::instance_to_json(ccs));
}

TEST_CASE("rationals serialize as reduced fractions") {
    const io::json j = io::instance_to_json(fig1_file());
    CHECK(j["target"] == "4/3");
    CHECK(j["cost_table"][1] == "2/3");
}

TEST_CASE("malformed instances are rejected with precise errors") {
    CHECK_THROWS_AS(io::instance_from_json(io::json::parse("{}")), ParseError);
    CHECK_THROWS_AS(io::instance_from_json(io::json::parse(R"({"kind":"nope"})")), ParseError);
    CHECK_THROWS_AS(
        io::instance_from_json(io::json::parse(R"({"kind":"mscs","strings":[]})")), ParseError);
    CHECK_THROWS_AS(io::instance_from_json(io::json::parse(
                        R"({"kind":"mscs","strings":["10","01"],"cost_table":["0","1"]})")),
                    InstanceError);  // arity mismatch
    CHECK_THROWS_AS(io::instance_from_json(io::json::parse(
                        R"({"kind":"ccs","strings":["10","011"]})")),
                    InstanceError);  // ragged lengths
}

TEST_CASE("plain-text graph format round-trips") {
    const RmccGraph g = generate(3, 2, 3, true, 4).graph;
    const std::string text = io::format_rmcc_text(g);
    CHECK(text.starts_with("rmcc 3 2 3\n"));
    std::istringstream in(text);
    const RmccGraph back = io::parse_rmcc_text(in);
    CHECK(back.k == g.k);
    CHECK(back.n == g.n);
    CHECK(back.d == g.d);
    CHECK(back.edges == g.edges);

    std::istringstream bad("graph 1 2 3");
    CHECK_THROWS_AS(io::parse_rmcc_text(bad), ParseError);
}

TEST_CASE("hashing is stable and ignores provenance") {
    io::InstanceFile a = fig1_file();
    io::InstanceFile b = fig1_file();
    b.provenance = io::json{{"note", "anything"}};
    CHECK(io::instance_hash(a) == io::instance_hash(b));
    b.mscs->target = Rational(1);
    CHECK(io::instance_hash(a) != io::instance_hash(b));
    CHECK(io::fnv1a_hex("") == "cbf29ce484222325");
}

TEST_CASE("bundle verification passes on honest output and flags tampering") {
    const GeneratedRmcc gen = generate(3, 2, 3, true, 8);
    const MscsReduction red = rmcc_to_mscs(gen.graph, builtin_family(Builtin::sigma));
    io::json bundle = io::make_bundle_rmcc_to_mscs(gen.graph, "sigma", red, gen.planted);
    CHECK(io::verify_bundle(bundle).all_pass);

    io::json tampered = bundle;
    std::string s = tampered["output"]["strings"][1].get<std::string>();
    s[5] = s[5] == '0' ? '1' : '0';
    tampered["output"]["strings"][1] = s;
    const io::VerifyReport rep = io::verify_bundle(tampered);
    CHECK_FALSE(rep.all_pass);

    io::json wrong_hash = bundle;
    wrong_hash["source_hash"] = "0000000000000000";
    CHECK_FALSE(io::verify_bundle(wrong_hash).all_pass);
}

TEST_CASE("dtw bundle verification replays the witness") {
    MscsInstance inst{{BinaryString::parse("10"), BinaryString::parse("01"),
                       BinaryString::parse("11")},
                      tabulate_builtin(Builtin::phi, 3),
                      std::nullopt};
    DtwReductionOverrides ov;
    ov.m = 4;
    ov.r = 3;
    ov.allow_small_k = true;
    const DtwReduction red = mscs_phi_to_dtw(inst, Rational(1, 2), ov);
    const io::json bundle =
        io::make_bundle_mscs_to_dtw(inst, red, ShiftVector{{0, 1, 0}});
    const io::VerifyReport rep = io::verify_bundle(bundle);
    CHECK(rep.all_pass);
    bool saw_fcost = false;
    for (const auto& c : rep.checks) saw_fcost = saw_fcost || c.name == "fcost-bound";
    CHECK(saw_fcost);
}

TEST_CASE("report formatting") {
    io::VerifyReport rep;
    rep.add("alpha", true, "fine");
    rep.add("beta", false);
    CHECK_FALSE(rep.all_pass);
    const std::string text = io::format_report(rep);
    CHECK(text.find("pass  alpha") != std::string::npos);
    CHECK(text.find("FAIL  beta") != std::string::npos);
    const io::json j = io::report_to_json(rep);
    CHECK(j["all_pass"] == false);
    CHECK(j["checks"].size() == 2);
}

TEST_SUITE_END();

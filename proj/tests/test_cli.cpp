#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "support/minischema.hpp"

#ifndef KGT_CLI_PATH
#error "KGT_CLI_PATH must point at the built binary"
#endif
#ifndef KGT_SOURCE_DIR
#error "KGT_SOURCE_DIR must point at the repository root"
#endif

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

int run_counter = 0;

RunResult run(const std::string& args, const std::string& env = "") {
    std::string tmp = "/tmp/kgt_cli_test_" + std::to_string(::getpid()) + "_" +
                      std::to_string(run_counter++) + ".out";
    std::string cmd = env + " " + std::string(KGT_CLI_PATH) + " " + args + " > " + tmp + " 2>&1";
    int status = std::system(cmd.c_str());
    std::ifstream f(tmp);
    std::stringstream ss;
    ss << f.rdbuf();
    std::remove(tmp.c_str());
    return {WEXITSTATUS(status), ss.str()};
}

json load_schema(const std::string& name) {
    std::ifstream f(std::string(KGT_SOURCE_DIR) + "/schemas/" + name);
    REQUIRE(f.good());
    return json::parse(f);
}

void require_valid(const json& doc, const std::string& schema_name) {
    std::string err;
    bool ok = minischema::validate(doc, load_schema(schema_name), err);
    INFO(err);
    REQUIRE(ok);
}

}  // namespace

TEST_CASE("verify-toric passes and validates") {
    auto r = run("verify-toric");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    require_valid(j, "verify-toric.schema.json");
    REQUIRE(j["all_pass"] == true);
    REQUIRE(j["ehrhart"] == json::array({"18", "45/2", "17/2", "1"}));
    REQUIRE(j["star_rays"].size() == 5);
    REQUIRE(j["cartier_table"].size() == 6);
}

TEST_CASE("class-number subcommand") {
    auto r = run("class-number --disc -23");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    require_valid(j, "class-number.schema.json");
    REQUIRE(j["h"] == 3);
    REQUIRE(j["bound"].is_null());

    auto r2 = run("class-number --disc -24");
    json j2 = json::parse(r2.out);
    require_valid(j2, "class-number.schema.json");
    REQUIRE(j2["h"] == 2);
    REQUIRE(j2["bound"].get<double>() >= 2.0);

    REQUIRE(run("class-number --disc -5").exit_code == 2);
}

TEST_CASE("indices subcommand") {
    auto r = run("indices --n 6");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    require_valid(j, "indices.schema.json");
    REQUIRE(j["index_gamma0"] == 12);
    REQUIRE(j["index_gamma1"] == 24);
}

TEST_CASE("certify subcommand") {
    auto r = run("certify --d 48 --epsilon 0.25 --gamma 0.25");
    REQUIRE(r.exit_code == 1);  // computed margin is negative at d = 48
    json j = json::parse(r.out);
    require_valid(j, "certify.schema.json");
    REQUIRE(j["verdict"] == false);
    REQUIRE(j["margin"].get<double>() < 0);
    REQUIRE(j["constants"]["K_nu"].get<double>() >= 1.0);

    REQUIRE(run("certify --d 10").exit_code == 2);
    REQUIRE(run("certify").exit_code == 2);
}

TEST_CASE("scan subcommand") {
    auto r = run("scan --epsilon 0.25 --gamma 0.25 --dmax 100000");
    REQUIRE(r.exit_code == 1);
    json j = json::parse(r.out);
    require_valid(j, "scan.schema.json");
    REQUIRE(j["found"] == false);
    REQUIRE(j["d0"].is_null());
    REQUIRE(j["exponents"]["dominant"] == false);
    REQUIRE(j["exponents"]["e3"] == "21/8");
}

TEST_CASE("ehrhart subcommand") {
    auto r = run("ehrhart --k 3");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out == "k,count\n0,1\n1,50\n2,252\n3,715\n");

    auto r2 = run("ehrhart --k 2 --output json");
    REQUIRE(r2.exit_code == 0);
    json j = json::parse(r2.out);
    require_valid(j, "ehrhart.schema.json");
    REQUIRE(j["counts"][1]["count"] == 50);

    REQUIRE(run("ehrhart --k 100").exit_code == 2);
}

TEST_CASE("congruence subcommand") {
    auto r = run("congruence --d 6");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    require_valid(j, "congruence.schema.json");
    REQUIRE(j["discriminant_group"]["order"] == 72);
    REQUIRE(j["index_bound"] == 11520);
    REQUIRE(j["gram"].size() == 6);
    REQUIRE(j["gram"][5][5] == -12);
}

TEST_CASE("identical invocations produce identical bytes") {
    for (std::string args : {std::string("verify-toric"),
                             std::string("certify --d 48 --epsilon 0.25 --gamma 0.25 --seed 7"),
                             std::string("ehrhart --k 4")}) {
        auto a = run(args);
        auto b = run(args);
        REQUIRE(a.out == b.out);
        REQUIRE(a.exit_code == b.exit_code);
    }
}

TEST_CASE("slack override through the environment") {
    auto a = run("certify --d 48", "KGT_SLACK_BITS=40");
    auto b = run("certify --d 48", "KGT_SLACK_BITS=20");
    json ja = json::parse(a.out), jb = json::parse(b.out);
    require_valid(jb, "certify.schema.json");
    REQUIRE(ja["margin"].get<double>() != jb["margin"].get<double>());
    REQUIRE(run("certify --d 48", "KGT_SLACK_BITS=0").exit_code == 2);
}

TEST_CASE("unknown inputs exit with code 2") {
    REQUIRE(run("bogus").exit_code == 2);
    REQUIRE(run("indices").exit_code == 2);
    REQUIRE(run("ehrhart --output yaml").exit_code == 2);
}

#include <doctest.h>

#include "mtvlab/errors.hpp"
#include "mtvlab/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

using namespace mtvlab;

TEST_CASE("glob matching") {
    CHECK(glob_match("*", "ANYTHING"));
    CHECK(glob_match("*", ""));
    CHECK(glob_match("THM?", "THM1"));
    CHECK_FALSE(glob_match("THM?", "THM23"));
    CHECK(glob_match("THM*", "THM23"));
    CHECK(glob_match("*3*", "THM23"));
    CHECK(glob_match("*3*", "C3"));
    CHECK(glob_match("C3", "C3"));
    CHECK_FALSE(glob_match("C3", "C4"));
    CHECK(glob_match("", ""));
    CHECK_FALSE(glob_match("", "X"));
    CHECK(glob_match("T*3", "THM3"));
    CHECK_FALSE(glob_match("?", ""));
    CHECK(glob_match("*T", "ZEXACT"));
}

TEST_CASE("registry shape") {
    RunConfig cfg;
    std::vector<IdentityCase> cases = registry(cfg);
    CHECK(cases.size() >= 300);

    std::set<std::string> ids;
    int zexact = 0, lem22 = 0, thm3 = 0;
    for (const auto& c : cases) {
        ids.insert(c.id);
        if (c.id == "ZEXACT") ++zexact;
        if (c.id == "LEM22") ++lem22;
        if (c.id == "THM3") ++thm3;
        CHECK(std::is_sorted(c.params.begin(), c.params.end()));
        if (c.kind == CaseKind::numeric) CHECK(c.tol > 0.0);
    }
    const char* expected[] = {"THM1", "THM2",  "THM3",   "THM23", "THMB3",  "C3",  "C4",
                              "C5",   "C6",    "C7",     "C8",    "D456",   "D11", "ZEXACT",
                              "B15",  "T17",   "SPECIAL", "LEM22", "LEM41", "REDUCED", "INV"};
    for (const char* id : expected) CHECK(ids.count(id) == 1);
    CHECK(ids.size() == 21);
    CHECK(zexact == 36);
    CHECK(lem22 == 96);
    CHECK(thm3 == 54);
}

TEST_CASE("filtered runs") {
    RunConfig cfg;
    cfg.filter = "ZEXACT";
    Report rep = run(cfg);
    CHECK(rep.summary.total == 36);
    CHECK(rep.summary.failed == 0);
    for (const auto& r : rep.records) {
        CHECK(r.kind == CaseKind::exact);
        CHECK_FALSE(r.lhs_exact.empty());
        CHECK(r.pass);
    }
    CHECK(std::is_sorted(rep.records.begin(), rep.records.end(),
                         [](const CaseRecord& a, const CaseRecord& b) {
                             return std::tie(a.id, a.params) < std::tie(b.id, b.params);
                         }));

    cfg.filter = "B15";
    CHECK(run(cfg).summary.failed == 0);

    cfg.filter = "NOPE";
    CHECK(run(cfg).summary.total == 0);
}

TEST_CASE("deterministic reports, serial and parallel") {
    RunConfig cfg;
    cfg.filter = "ZEXACT";
    Report a = run(cfg);
    cfg.parallel = true;
    Report b = run(cfg);
    for (auto& r : a.records) r.runtime_ms = 0.0;
    for (auto& r : b.records) r.runtime_ms = 0.0;
    CHECK(report_json(a) == report_json(b));
    CHECK(report_csv(a) == report_csv(b));
}

TEST_CASE("report serialization") {
    RunConfig cfg;
    cfg.filter = "ZEXACT";
    Report rep = run(cfg);

    std::string js = report_json(rep);
    CHECK(js.find("\"summary\"") != std::string::npos);
    CHECK(js.find("\"records\"") != std::string::npos);
    CHECK(js.find("\"pi_exp\":") != std::string::npos);
    CHECK(js.find("\"kind\": \"exact\"") != std::string::npos);

    std::string csv = report_csv(rep);
    std::istringstream lines(csv);
    std::string first;
    std::getline(lines, first);
    CHECK(first ==
          "id,params,kind,lhs_value,rhs_value,lhs_exact,rhs_exact,abs_err,rel_err,tol,pass,"
          "runtime_ms,method_notes");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 37);
}

TEST_CASE("report file writing") {
    RunConfig cfg;
    cfg.filter = "ZEXACT";
    cfg.out = "/tmp/mtvlab_report_test.json";
    run(cfg);
    std::ifstream f(cfg.out);
    REQUIRE(f.good());
    std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(content.rfind("{", 0) == 0);
    CHECK(content.find("ZEXACT") != std::string::npos);
    std::remove(cfg.out.c_str());

    cfg.out = "/nonexistent-dir/x.json";
    CHECK_THROWS_AS(run(cfg), usage_error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <string>

#include "emalg/audit.hpp"
#include "emalg/io.hpp"
#include "emalg/limits.hpp"
#include "emalg/models/heisenberg.hpp"

using namespace emalg;

namespace {

std::string temp_path(const char* name) {
    return std::string("emalg_io_test_") + name + ".tmp";
}

struct FileGuard {
    std::string path;
    ~FileGuard() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("table JSON round-trip is byte-stable") {
    const OpTable t = dihedral_table(5);
    const std::string j1 = table_to_json(t);
    const OpTable back = table_from_json(j1);
    CHECK(back == t);
    CHECK(table_to_json(back) == j1);
    CHECK(j1.back() == '\n');
}

TEST_CASE("table parser rejects malformed content with located defects") {
    CHECK_THROWS_AS(table_from_json("{"), TableFormatError);
    CHECK_THROWS_AS(table_from_json("[]"), TableFormatError);
    CHECK_THROWS_AS(table_from_json("{\"n\": 2}"), TableFormatError);
    CHECK_THROWS_AS(table_from_json("{\"table\": [[0]]}"), TableFormatError);
    CHECK_THROWS_AS(table_from_json("{\"n\": \"two\", \"table\": [[0,1],[1,0]]}"),
                    TableFormatError);
    CHECK_THROWS_AS(table_from_json("{\"n\": 0, \"table\": []}"), TableFormatError);
    // declared order disagrees with the row count
    CHECK_THROWS_AS(table_from_json("{\"n\": 3, \"table\": [[0,1],[1,0]]}"), TableFormatError);

    try {
        table_from_json("{\"n\": 2, \"table\": [[0,1],[1,\"x\"]]}");
        FAIL("expected TableFormatError");
    } catch (const TableFormatError& e) {
        CHECK(e.row() == 1);
        CHECK(e.col() == 1);
    }
    try {
        table_from_json("{\"n\": 2, \"table\": [[0,1],[1,7]]}");
        FAIL("expected TableFormatError");
    } catch (const TableFormatError& e) {
        // range defect is located by the shared validator
        CHECK(e.row() == 1);
        CHECK(e.col() == 1);
    }
    try {
        table_from_json("{\"n\": 2, \"table\": [[0,1],[1]]}");
        FAIL("expected TableFormatError");
    } catch (const TableFormatError& e) {
        CHECK(e.row() == 1);
        CHECK(e.col() == -1);
    }
}

TEST_CASE("table files: write, read back, and missing-file error") {
    const FileGuard g{temp_path("table")};
    const OpTable t = dihedral_table(4);
    write_table_file(g.path, t);
    CHECK(read_table_file(g.path) == t);
    CHECK_THROWS_AS(read_table_file("definitely_not_here_9321.json"), IoError);
}

TEST_CASE("text file round-trip and error paths") {
    const FileGuard g{temp_path("text")};
    write_text_file(g.path, "line1\nline2");
    CHECK(read_text_file(g.path) == "line1\nline2");
    CHECK_THROWS_AS(read_text_file("definitely_not_here_9321.txt"), IoError);
}

TEST_CASE("csv_field quotes only when needed") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
    CHECK(csv_field("") == "");
}

TEST_CASE("audit report CSV rendering") {
    AuditReport r;
    r.subject = "demo";
    r.checks.push_back({"alpha", 10, true, true, ""});
    r.checks.push_back({"beta", 5, false, true, "x=1, y=2"});
    r.checks.push_back({"gamma", 7, false, false, "expected"});
    CHECK(audit_csv(r) ==
          "check,samples,status,witness\n"
          "alpha,10,pass,-\n"
          "beta,5,fail,\"x=1, y=2\"\n"
          "gamma,7,info:fail,expected\n");
}

TEST_CASE("audit report JSON fields") {
    AuditReport r;
    r.subject = "demo";
    r.seed = 42;
    r.tolerance = 0.0;
    r.checks.push_back({"alpha", 10, true, true, ""});
    r.checks.push_back({"gamma", 7, false, false, "expected"});
    const std::string j = audit_json(r);
    CHECK(j.find("\"subject\": \"demo\"") != std::string::npos);
    CHECK(j.find("\"seed\": 42") != std::string::npos);
    CHECK(j.find("\"all_pass\": true") != std::string::npos);
    CHECK(j.find("\"name\": \"alpha\"") != std::string::npos);
    CHECK(j.find("\"gating\": false") != std::string::npos);
    CHECK(j.find("\"witness\": \"expected\"") != std::string::npos);
    CHECK(j.back() == '\n');
}

TEST_CASE("convergence CSV for an exact rational run") {
    ConvergenceReport<Rat> r;
    r.moduli = {0.5, 0.25};
    r.scale_labels = {"1/2", "1/4"};
    r.values = {{frac(1, 2), Rat(3)}, {frac(1, 2), Rat(3)}};
    r.limit = std::vector<Rat>{frac(1, 2), Rat(3)};
    r.residuals = {0.0, 0.0};
    r.exact = true;
    CHECK(convergence_csv(r) ==
          "epsilon,value,residual\n"
          "1/2,(1/2;3),0\n"
          "1/4,(1/2;3),0\n"
          "limit,(1/2;3),exact\n");
}

TEST_CASE("convergence CSV for a measured-rate and a divergent run") {
    ConvergenceReport<double> r;
    r.moduli = {0.5, 0.25};
    r.scale_labels = {"1/2", "1/4"};
    r.values = {{0.5}, {0.25}};
    r.limit = std::vector<double>{0.0};
    r.residuals = {0.5, 0.25};
    r.rate = 1.0;
    CHECK(convergence_csv(r) ==
          "epsilon,value,residual\n"
          "1/2,(0.5),0.5\n"
          "1/4,(0.25),0.25\n"
          "limit,(0),rate=1.000000\n");

    ConvergenceReport<Rat> d;
    d.moduli = {0.5, 0.25};
    d.scale_labels = {"1/2", "1/4"};
    d.values = {{Rat(2)}, {Rat(4)}};
    d.diverged = true;
    CHECK(convergence_csv(d) ==
          "epsilon,value,residual\n"
          "1/2,(2),-\n"
          "1/4,(4),-\n"
          "limit,diverged,-\n");
}

TEST_CASE("convergence JSON carries labels, limit, and flags") {
    const auto rep = estimate_limit(
        [&](const Scale& e) { return std::vector<Rat>{Rat(1) + e.modulus()}; },
        Schedule::dyadic(1, 8));
    const std::string j = convergence_json(rep);
    CHECK(j.find("\"epsilon\"") != std::string::npos);
    CHECK(j.find("\"1/2\"") != std::string::npos);
    CHECK(j.find("\"limit\"") != std::string::npos);
    CHECK(j.find("\"1\"") != std::string::npos);
    CHECK(j.find("\"exact\": false") != std::string::npos);
    CHECK(j.find("\"diverged\": false") != std::string::npos);
    CHECK(j.find("\"rate\"") != std::string::npos);

    ConvergenceReport<Rat> d;
    d.moduli = {0.5, 0.25};
    d.scale_labels = {"1/2", "1/4"};
    d.values = {{Rat(2)}, {Rat(4)}};
    d.diverged = true;
    const std::string dj = convergence_json(d);
    CHECK(dj.find("\"limit\": null") != std::string::npos);
    CHECK(dj.find("\"rate\": null") != std::string::npos);
    CHECK(dj.find("\"diverged\": true") != std::string::npos);
}

TEST_CASE("identical audits render to identical bytes") {
    const HeisenbergModel m;
    const AuditReport a = audit_irq(m, 2024, 120);
    const AuditReport b = audit_irq(m, 2024, 120);
    CHECK(audit_csv(a) == audit_csv(b));
    CHECK(audit_json(a) == audit_json(b));
}

TEST_CASE("rational and floating scalars render canonically") {
    CHECK(detail::scalar_csv(frac(-3, 7)) == "-3/7");
    CHECK(detail::scalar_csv(Rat(4)) == "4");
    CHECK(detail::scalar_csv(0.5) == "0.5");
    CHECK(detail::scalar_csv(0.0) == "0");
    CHECK(detail::value_csv(std::vector<Rat>{Rat(1), frac(1, 2)}) == "(1;1/2)");
    CHECK(detail::residual_csv(0.0) == "0");
}

#include <doctest.h>

#include "doubletop/report.hpp"

using namespace doubletop;

TEST_CASE("fnv-1a reference vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("category fingerprint is a content hash") {
    auto a = zoo("fibonacci");
    CHECK(category_fingerprint(a).size() == 16);
    CHECK(category_fingerprint(a) == category_fingerprint(zoo("fibonacci")));
    CHECK(category_fingerprint(a) != category_fingerprint(zoo("ising")));
    auto b = category_from_json_text(category_to_json_text(a));
    CHECK(category_fingerprint(b) == category_fingerprint(a));
}

TEST_CASE("report serialization is deterministic and hides timings by default") {
    RunReport r;
    r.command = {"modular-data", "--category", "zoo:ising"};
    r.fingerprint = "0123456789abcdef";
    r.residuals["z"] = 1e-16;
    r.residuals["a"] = 0.0;
    r.results["S"] = to_json(Mat(Mat::Identity(2, 2)));
    {
        StageTimer t(r, "stage");
    }
    auto text = r.to_json_text();
    CHECK(text == r.to_json_text());
    CHECK(text.find("timings") == std::string::npos);
    CHECK(text.find("\"a\"") < text.find("\"z\""));
    r.emit_timings = true;
    CHECK(r.to_json_text().find("timings") != std::string::npos);
}

TEST_CASE("complex values serialize as re/im") {
    auto j = to_json(cplx(1.5, -2));
    CHECK(j["re"] == 1.5);
    CHECK(j["im"] == -2.0);
    Vec v(2);
    v << cplx(1, 0), cplx(0, 1);
    CHECK(to_json(v).size() == 2);
}

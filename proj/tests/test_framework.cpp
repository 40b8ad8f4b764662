#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "rigid/json_io.hpp"
#include "rigid/randgen.hpp"

using namespace rigid;
using R = Rational;

namespace {

json triangle_doc() {
    return json::parse(R"({
      "dimension": 2, "geometry": "euclidean",
      "vertices": [[0, 0], [1, 0], [0, 1]],
      "edges": [[0, 1], [1, 2], [0, 2]]
    })");
}

} // namespace

TEST_CASE("parsing a minimal valid document") {
    const auto fw = parse_framework<R>(triangle_doc());
    CHECK(fw.vertex_count() == 3);
    CHECK(fw.edge_count() == 3);
    CHECK(fw.dim == 2);
    CHECK(fw.geometry == Geometry::euclidean);
}

TEST_CASE("validation failures") {
    auto doc = triangle_doc();
    doc["vertices"][1] = doc["vertices"][0];
    CHECK_THROWS_AS(parse_framework<R>(doc), CoincidentEdgeEndpoints);

    // hyperbolic vertex on the wrong sheet
    json hyp = json::parse(R"({
      "dimension": 1, "geometry": "hyperbolic",
      "vertices": [["-5/4", "3/4"], [1, 0]],
      "edges": [[0, 1]]
    })");
    CHECK_THROWS_AS(parse_framework<R>(hyp), NonPositiveSheet);

    hyp["vertices"][0] = {2, 1}; // |x|^2_{1,1} = 3, off the hyperboloid
    CHECK_THROWS_AS(parse_framework<R>(hyp), OffSurfaceVertex);

    auto missing = triangle_doc();
    missing.erase("edges");
    CHECK_THROWS_AS(parse_framework<R>(missing), SchemaError);

    auto selfloop = triangle_doc();
    selfloop["edges"][0] = {1, 1};
    CHECK_THROWS_AS(parse_framework<R>(selfloop), SchemaError);

    auto dup = triangle_doc();
    dup["edges"].push_back({1, 0});
    CHECK_THROWS_AS(parse_framework<R>(dup), SchemaError);

    auto range = triangle_doc();
    range["edges"][0] = {0, 9};
    CHECK_THROWS_AS(parse_framework<R>(range), SchemaError);
}

TEST_CASE("coincident non-adjacent vertices are legal") {
    json doc = json::parse(R"({
      "dimension": 2, "geometry": "euclidean",
      "vertices": [[0, 0], [1, 0], [0, 0]],
      "edges": [[0, 1], [1, 2]]
    })");
    CHECK_NOTHROW(parse_framework<R>(doc));
}

TEST_CASE("parse-serialize-parse is the identity") {
    // exact mode: non-dyadic rationals round-trip through p/q strings
    json doc = triangle_doc();
    doc["vertices"][0] = {"1/3", "2/7"};
    const auto fw = parse_framework<R>(doc);
    const auto fw2 = parse_framework<R>(framework_to_json(fw));
    CHECK(fw.vertices == fw2.vertices);
    CHECK(fw.edges == fw2.edges);

    // floating mode: shortest round-trip doubles reparse identically
    Framework<double> fd;
    fd.dim = 2;
    fd.geometry = Geometry::euclidean;
    fd.vertices = {{0.1, 0.2}, {1.7, -2.3}, {0.0, 1e-17}};
    fd.edges = {{0, 1}, {1, 2}};
    const auto fd2 = parse_framework<double>(framework_to_json(fd));
    CHECK(fd.vertices == fd2.vertices);
}

TEST_CASE("labels survive a round trip") {
    auto doc = triangle_doc();
    doc["labels"] = {"a", "b", "c"};
    const auto fw = parse_framework<R>(doc);
    CHECK(fw.labels == std::vector<std::string>{"a", "b", "c"});
    CHECK(framework_to_json(fw)["labels"] == doc["labels"]);
}

TEST_CASE("lift to projective") {
    Framework<R> fw;
    fw.dim = 2;
    fw.geometry = Geometry::euclidean;
    fw.vertices = {{R(2), R(3)}};
    auto X = lift_to_projective(fw);
    CHECK(X.representatives[0] == Vector<R>{R(1), R(2), R(3)});

    // hyperbolic vertices pass through as ambient coordinates
    Framework<R> hy;
    hy.dim = 1;
    hy.geometry = Geometry::hyperbolic;
    hy.vertices = {{R(5, 4), R(3, 4)}, {R(1), R(0)}};
    hy.edges = {{0, 1}};
    auto Xh = lift_to_projective(hy);
    CHECK(Xh.representatives[0] == hy.vertices[0]);

    // lifted edge representatives stay non-proportional on random frameworks
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_framework(rng, 2, false);
        CHECK_NOTHROW(lift_to_projective(f).validate());
    }
}

TEST_CASE("affine span dimension") {
    Framework<R> tri;
    tri.dim = 2;
    tri.geometry = Geometry::euclidean;
    tri.vertices = {{R(0), R(0)}, {R(1), R(0)}, {R(0), R(1)}};
    CHECK(affine_span_dim(tri, TolerancePolicy::exact()) == 2);

    Framework<R> line = tri;
    line.vertices = {{R(0), R(0)}, {R(1), R(1)}, {R(2), R(2)}};
    CHECK(affine_span_dim(line, TolerancePolicy::exact()) == 1);

    // random spatial point sets in general position, checked by the
    // independent echelon oracle on the difference matrix
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        Framework<R> fw;
        fw.dim = 3;
        fw.geometry = Geometry::euclidean;
        for (int i = 0; i < 6; ++i) {
            Vector<R> p(3);
            for (auto& x : p) x = R(rng.next_int(-20, 20)) / R(1 + rng.next_int(0, 2));
            fw.vertices.push_back(std::move(p));
        }
        std::vector<std::vector<R>> diffs;
        for (std::size_t i = 1; i < fw.vertices.size(); ++i)
            diffs.push_back(sub(fw.vertices[i], fw.vertices[0]));
        CHECK(affine_span_dim(fw, TolerancePolicy::exact()) == oracle::rref_rank(diffs));
    }
}

TEST_CASE("geometry guards") {
    Framework<R> hy;
    hy.dim = 1;
    hy.geometry = Geometry::hyperbolic;
    hy.vertices = {{R(5, 4), R(3, 4)}};
    CHECK_THROWS_AS(affine_span_dim(hy), GeometryMismatch);
    CHECK_THROWS_AS(geometry_from_name("elliptic"), SchemaError);
}

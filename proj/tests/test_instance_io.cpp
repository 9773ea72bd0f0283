#include "fairmsr/instance_io.hpp"
#include "fairmsr/errors.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <sstream>

using namespace fairmsr;
using testutil::make_points;

TEST_SUITE("instance_io") {

TEST_CASE("headerless rows, no colors") {
    std::istringstream in("0,0\n1.5,2\n\n-3,4.25\n");
    auto inst = read_instance_csv(in);
    CHECK(inst.points.size() == 3);
    CHECK(inst.points.dim() == 2);
    CHECK(!inst.has_colors());
    CHECK(inst.points[1][0] == 1.5);
    CHECK(inst.points[2][1] == 4.25);
}

TEST_CASE("headerless rows with color tags") {
    std::istringstream in("0,0,color:red\n1,0,color:blue\n2,0,color:red\n");
    auto inst = read_instance_csv(in);
    REQUIRE(inst.has_colors());
    CHECK(inst.colors.labels == std::vector<std::string>{"red", "blue"});
    CHECK(inst.colors.color_of == std::vector<int>{0, 1, 0});
}

TEST_CASE("header form puts the color column anywhere") {
    std::istringstream in("x,color,y\n0,red,0\n1,blue,0\n");
    auto inst = read_instance_csv(in);
    CHECK(inst.points.dim() == 2);
    REQUIRE(inst.has_colors());
    CHECK(inst.colors.labels == std::vector<std::string>{"red", "blue"});
    CHECK(inst.points[1][0] == 1.0);
}

TEST_CASE("writer round-trips exactly") {
    PointSet pts = make_points(
        {{0.1, 0.2}, {1.0 / 3.0, -7.25}, {1e-17, 123456.789}});
    ColorTable colors;
    colors.labels = {"a", "b"};
    colors.color_of = {0, 1, 1};

    std::ostringstream out;
    write_instance_csv(out, pts, &colors);
    std::istringstream in(out.str());
    auto back = read_instance_csv(in);

    REQUIRE(back.points.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t d = 0; d < pts.dim(); ++d)
            CHECK(back.points[i][d] == pts[i][d]);
    CHECK(back.colors.color_of == colors.color_of);
    CHECK(back.colors.labels == colors.labels);

    std::ostringstream out_plain;
    write_instance_csv(out_plain, pts, nullptr);
    std::istringstream in_plain(out_plain.str());
    auto plain = read_instance_csv(in_plain);
    CHECK(!plain.has_colors());
    CHECK(plain.points.size() == 3);
}

TEST_CASE("errors carry the offending line") {
    std::istringstream dim("0,0\n1,2,3\n");
    CHECK_THROWS_WITH_AS(read_instance_csv(dim),
                         "line 2: expected 2 coordinates, got 3",
                         InstanceError);

    std::istringstream bad("0,0\n1,nope\n");
    CHECK_THROWS_WITH_AS(read_instance_csv(bad),
                         "line 2: bad coordinate 'nope'", InstanceError);

    std::istringstream mixed("0,0,color:red\n1,1\n");
    CHECK_THROWS_WITH_AS(read_instance_csv(mixed),
                         "line 2: inconsistent color annotations",
                         InstanceError);

    std::istringstream empty("\n\n");
    CHECK_THROWS_AS(read_instance_csv(empty), InstanceError);

    CHECK_THROWS_AS(read_instance_file("/nonexistent/path.csv"),
                    InstanceError);
}

TEST_CASE("digest pins shape, coordinates and colors") {
    PointSet a = make_points({{0, 0}, {1, 2}});
    PointSet b = make_points({{0, 0}, {1, 2.0000000001}});
    PointSet flat = make_points({{0, 0, 1, 2}});

    auto d_a = instance_digest(a, nullptr);
    CHECK(d_a.size() == 16);
    CHECK(d_a == instance_digest(a, nullptr)); // stable
    CHECK(d_a != instance_digest(b, nullptr)); // coordinate-sensitive
    CHECK(d_a != instance_digest(flat, nullptr)); // shape-sensitive

    ColorTable colors;
    colors.labels = {"red", "blue"};
    colors.color_of = {0, 1};
    CHECK(d_a != instance_digest(a, &colors)); // color-sensitive

    ColorTable renamed;
    renamed.labels = {"red", "green"};
    renamed.color_of = {0, 1};
    CHECK(instance_digest(a, &colors) != instance_digest(a, &renamed));
}

} // TEST_SUITE

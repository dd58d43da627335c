#include <doctest.h>

#include <random>

#include "pythwalk/geometry.hpp"

using namespace pythwalk;

TEST_CASE("step_from validates both invariants") {
    const StepResult ok = step_from(9, 12);
    REQUIRE(ok.ok());
    CHECK(ok.step.len == 15);

    const StepResult axis = step_from(5, 0);
    CHECK_FALSE(axis.ok());
    CHECK(axis.fail == StepFail::zero_component);

    const StepResult nonsq = step_from(2, 3); // 4 + 9 = 13, between 3^2 and 4^2
    CHECK_FALSE(nonsq.ok());
    CHECK(nonsq.fail == StepFail::non_square_length);
}

TEST_CASE("is_edge") {
    CHECK(is_edge({0, 0}, {4, -3}));
    CHECK_FALSE(is_edge({0, 0}, {1, 0}));
    CHECK_FALSE(is_edge({0, 0}, {1, 1}));

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<i64> coord(-60, 60);
    for (int i = 0; i < 500; ++i) {
        const LatticePoint p{coord(rng), coord(rng)}, q{coord(rng), coord(rng)};
        const LatticePoint t{coord(rng), coord(rng)};
        CHECK(is_edge(p, q) == is_edge(q, p));
        CHECK(is_edge(p, q) == is_edge(p + t, q + t));
    }
}

TEST_CASE("valid steps stay valid under nonzero integer scaling") {
    for (const auto& [dx, dy] : {std::pair<i64, i64>{3, 4}, {4, -3}, {-5, 12}, {20, 21}}) {
        for (const i64 k : {i64(2), i64(-1), i64(7), i64(-13)}) {
            const StepResult s = step_from(k * dx, k * dy);
            REQUIRE(s.ok());
            CHECK(s.step.len == (k < 0 ? -k : k) * step_from(dx, dy).step.len);
        }
    }
}

TEST_CASE("symmetry orbits") {
    CHECK(symmetry_orbit({1, 0}) ==
          std::vector<LatticePoint>{{-1, 0}, {0, -1}, {0, 1}, {1, 0}});
    CHECK(symmetry_orbit({2, 1}).size() == 8);
    CHECK(symmetry_orbit({1, 1}) ==
          std::vector<LatticePoint>{{-1, -1}, {-1, 1}, {1, -1}, {1, 1}});
    CHECK(symmetry_orbit({0, 0}) == std::vector<LatticePoint>{{0, 0}});
}

TEST_CASE("canonical representative") {
    CHECK(canonical_rep({-3, 2}) == LatticePoint{2, 3});
    CHECK(canonical_rep({0, -2}) == LatticePoint{0, 2});
    CHECK(canonical_rep({2111, 569}) == LatticePoint{569, 2111});
    for (const LatticePoint p : {LatticePoint{3, -7}, {0, 4}, {-5, -5}, {9, 2}})
        for (const LatticePoint q : symmetry_orbit(p)) CHECK(canonical_rep(q) == canonical_rep(p));
}

TEST_CASE("orbit_transform maps the representative onto each member") {
    for (const LatticePoint p : {LatticePoint{3, -7}, {0, 4}, {-5, -5}, {2, 1}}) {
        const LatticePoint r = canonical_rep(p);
        const auto t = orbit_transform(r, p);
        REQUIRE(t.has_value());
        CHECK(t->apply(r) == p);
    }
    CHECK_FALSE(orbit_transform({1, 2}, {3, 4}).has_value());
}

namespace {

WalkPath make_path(std::initializer_list<std::pair<i64, i64>> steps) {
    WalkPath p;
    for (const auto& [dx, dy] : steps) {
        const StepResult s = step_from(dx, dy);
        REQUIRE(s.ok());
        p.steps.push_back(s.step);
    }
    return p;
}

} // namespace

TEST_CASE("verify_path accepts the recorded walks") {
    CHECK(verify_path(make_path({{4, -3}, {-3, 4}}), {1, 1}).ok);
    CHECK(verify_path(make_path({{9, 12}, {-12, -9}, {4, -3}}), {1, 0}).ok);
    CHECK(verify_path(make_path({{9, 12}, {-5, -12}}), {4, 0}).ok);
    CHECK(verify_path(make_path({{77, -36}, {-75, 40}}), {2, 4}).ok);

    const WalkPath big = make_path({{-50643549, 196449668}, {50645660, -196449099}});
    CHECK(verify_path(big, {2111, 569}).ok);
    CHECK(big.steps[0].len == 202872475);
    CHECK(big.steps[1].len == 202872451);
}

TEST_CASE("verify_path reports the first violated step or the endpoint") {
    WalkPath p = make_path({{4, -3}, {-3, 4}});
    p.steps[1].dx = 0; // corrupt in place
    const PathCheck c1 = verify_path(p, {1, 1});
    CHECK_FALSE(c1.ok);
    CHECK(c1.bad_step == 1);
    CHECK(c1.step_fail == StepFail::zero_component);

    const PathCheck c2 = verify_path(make_path({{4, -3}, {-3, 4}}), {2, 1});
    CHECK_FALSE(c2.ok);
    CHECK(c2.endpoint_mismatch);
    CHECK(c2.bad_step == -1);
}

TEST_CASE("path documents round-trip through JSON") {
    const WalkPath p = make_path({{77, -36}, {-75, 40}});
    const PathDoc doc = to_doc(p);
    const PathDoc back = path_from_json(path_to_json(doc));
    CHECK(back.start == doc.start);
    CHECK(back.end == LatticePoint{2, 4});
    CHECK(back.steps == doc.steps);
    WalkPath rebuilt;
    CHECK(verify_doc(back, LatticePoint{2, 4}, &rebuilt).ok);
    CHECK(rebuilt == p);
}

TEST_CASE("invalid documents load but fail verification with an index") {
    const std::string text = R"({"start":[0,0],"steps":[[5,0],[1,1]],"end":[6,1]})";
    const PathDoc doc = path_from_json(text);
    const PathCheck c = verify_doc(doc, std::nullopt, nullptr);
    CHECK_FALSE(c.ok);
    CHECK(c.bad_step == 0);
    CHECK_THROWS_AS(path_from_json("{"), std::runtime_error);
    CHECK_THROWS_AS(path_from_json(R"({"start":[0,0],"steps":[[1]],"end":[0,0]})"),
                    std::runtime_error);
}

#include "pythwalk/geometry.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace pythwalk {

StepResult step_from(i64 dx, i64 dy) {
    if (dx == 0 || dy == 0) return {StepVector{dx, dy, 0}, StepFail::zero_component};
    const i64 len = integer_length(dx, dy);
    if (len < 0) return {StepVector{dx, dy, 0}, StepFail::non_square_length};
    return {StepVector{dx, dy, len}, StepFail::none};
}

bool is_edge(LatticePoint p, LatticePoint q) {
    const i64 dx = checked_sub(q.x, p.x);
    const i64 dy = checked_sub(q.y, p.y);
    if (dx == 0 || dy == 0) return false;
    return is_perfect_square(norm2(dx, dy));
}

const std::array<D4Transform, 8>& d4_transforms() {
    static const std::array<D4Transform, 8> k = {{
        {false, +1, +1}, {false, +1, -1}, {false, -1, +1}, {false, -1, -1},
        {true, +1, +1}, {true, +1, -1}, {true, -1, +1}, {true, -1, -1},
    }};
    return k;
}

std::vector<LatticePoint> symmetry_orbit(LatticePoint p) {
    std::vector<LatticePoint> out;
    out.reserve(8);
    for (const D4Transform& t : d4_transforms()) out.push_back(t.apply(p));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

LatticePoint canonical_rep(LatticePoint p) {
    i64 g = p.x < 0 ? -p.x : p.x;
    i64 h = p.y < 0 ? -p.y : p.y;
    if (g > h) std::swap(g, h);
    return {g, h};
}

std::optional<D4Transform> orbit_transform(LatticePoint from, LatticePoint to) {
    for (const D4Transform& t : d4_transforms())
        if (t.apply(from) == to) return t;
    return std::nullopt;
}

PathCheck verify_path(const WalkPath& path, LatticePoint claimed_end) {
    LatticePoint at = path.start;
    for (std::size_t i = 0; i < path.steps.size(); ++i) {
        const StepVector& s = path.steps[i];
        const StepResult r = step_from(s.dx, s.dy);
        if (!r.ok()) return {false, static_cast<int>(i), false, r.fail};
        if (r.step.len != s.len) return {false, static_cast<int>(i), false, StepFail::non_square_length};
        at = at + LatticePoint{s.dx, s.dy};
    }
    if (!(at == claimed_end)) return {false, -1, true, StepFail::none};
    return {true, -1, false, StepFail::none};
}

PathDoc to_doc(const WalkPath& path) {
    PathDoc doc;
    doc.start = path.start;
    doc.steps.reserve(path.steps.size());
    for (const StepVector& s : path.steps) doc.steps.emplace_back(s.dx, s.dy);
    doc.end = path.end();
    return doc;
}

PathCheck verify_doc(const PathDoc& doc, std::optional<LatticePoint> expected_end, WalkPath* out) {
    WalkPath path;
    path.start = doc.start;
    LatticePoint at = doc.start;
    for (std::size_t i = 0; i < doc.steps.size(); ++i) {
        const auto [dx, dy] = doc.steps[i];
        const StepResult r = step_from(dx, dy);
        if (!r.ok()) return {false, static_cast<int>(i), false, r.fail};
        path.steps.push_back(r.step);
        at = at + LatticePoint{dx, dy};
    }
    const LatticePoint want = expected_end.value_or(doc.end);
    if (!(at == want) || !(at == doc.end)) return {false, -1, true, StepFail::none};
    if (out) *out = std::move(path);
    return {true, -1, false, StepFail::none};
}

std::string path_to_json(const PathDoc& doc) {
    nlohmann::ordered_json j;
    j["start"] = {doc.start.x, doc.start.y};
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (const auto& [dx, dy] : doc.steps) steps.push_back({dx, dy});
    j["steps"] = std::move(steps);
    j["end"] = {doc.end.x, doc.end.y};
    return j.dump();
}

PathDoc path_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("path document: ") + e.what());
    }
    const auto point = [](const nlohmann::json& a, const char* what) -> LatticePoint {
        if (!a.is_array() || a.size() != 2 || !a[0].is_number_integer() || !a[1].is_number_integer())
            throw std::runtime_error(std::string("path document: bad ") + what);
        return {a[0].get<i64>(), a[1].get<i64>()};
    };
    if (!j.contains("start") || !j.contains("steps") || !j.contains("end"))
        throw std::runtime_error("path document: missing start/steps/end");
    PathDoc doc;
    doc.start = point(j["start"], "start");
    doc.end = point(j["end"], "end");
    if (!j["steps"].is_array()) throw std::runtime_error("path document: steps must be an array");
    for (const auto& s : j["steps"]) {
        const LatticePoint p = point(s, "step");
        doc.steps.emplace_back(p.x, p.y);
    }
    return doc;
}

} // namespace pythwalk

#include "pythwalk/triples.hpp"

#include <algorithm>
#include <stdexcept>

namespace pythwalk {

namespace {

void sort_by_hyp(std::vector<PythTriple>& v) {
    std::sort(v.begin(), v.end(), [](const PythTriple& l, const PythTriple& r) {
        if (l.c != r.c) return l.c < r.c;
        if (l.a != r.a) return l.a < r.a;
        return l.b < r.b;
    });
}

} // namespace

std::vector<PythTriple> triples_up_to_leg(i64 leg_max) {
    if (leg_max < 5) throw std::domain_error("triples_up_to_leg: leg bound must be >= 5");
    std::vector<PythTriple> out;
    for_each_triple_up_to_leg(leg_max, [&](const PythTriple& t) { out.push_back(t); });
    sort_by_hyp(out);
    return out;
}

std::vector<PythTriple> triples_up_to_hyp(i64 hyp_max) {
    if (hyp_max < 5) throw std::domain_error("triples_up_to_hyp: hypotenuse bound must be >= 5");
    std::vector<PythTriple> out;
    for_each_triple_up_to_hyp(hyp_max, [&](const PythTriple& t) { out.push_back(t); });
    sort_by_hyp(out);
    return out;
}

std::vector<PythTriple> triples_from_params(i64 m_max, i64 n_max, i64 d_max) {
    if (m_max < 2 || n_max < 2 || d_max < 2)
        throw std::domain_error("triples_from_params: all bounds must be >= 2");
    std::vector<PythTriple> out;
    for_each_triple_from_params(m_max, n_max, d_max, [&](const PythTriple& t) { out.push_back(t); });
    return out;
}

} // namespace pythwalk

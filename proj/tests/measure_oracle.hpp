#pragma once

// Textbook definitions of the fifteen measures evaluated on full vectors p and
// the indicator I_j = (1,...,1,0,...,0). Independent of the reduced forms.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "subprof/topicselect.hpp"

namespace testing {

inline std::vector<double> indicator(std::size_t k, int j) {
    std::vector<double> v(k, 0.0);
    for (int i = 0; i < j; ++i) v[static_cast<std::size_t>(i)] = 1.0;
    return v;
}

inline double textbook_measure(const std::vector<double>& p, int j, subprof::Measure m) {
    using subprof::Measure;
    const auto q = indicator(p.size(), j);
    double dot = 0, pp = 0, qq = 0, sum_min = 0, sum_max = 0, l1 = 0, l2 = 0, linf = 0, sp = 0, sq = 0;
    double cam = 0, div = 0, ney = 0;
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double a = p[i], b = q[i];
        dot += a * b;
        pp += a * a;
        qq += b * b;
        sum_min += std::min(a, b);
        sum_max += std::max(a, b);
        l1 += std::abs(a - b);
        l2 += (a - b) * (a - b);
        linf = std::max(linf, std::abs(a - b));
        sp += a;
        sq += b;
        if (a + b > 0) {
            cam += std::abs(a - b) / (a + b);
            div += (a - b) * (a - b) / ((a + b) * (a + b));
        }
        ney += a > 0 ? (a - b) * (a - b) / a : inf;
    }
    switch (m) {
    case Measure::Cosine: return dot / (std::sqrt(pp) * std::sqrt(qq));
    case Measure::Dice: return 2 * dot / (pp + qq);
    case Measure::Jaccard: return dot / (pp + qq - dot);
    case Measure::Czekanowski: return 2 * sum_min / (sp + sq);
    case Measure::Ruzicka: return sum_min / sum_max;
    case Measure::Overlap: return sum_min / std::min(sp, sq);
    case Measure::Euclidean: return std::sqrt(l2);
    case Measure::Hamming: return l1;
    case Measure::Chebyshev: return linf;
    case Measure::SorensenDist: return l1 / (sp + sq);
    case Measure::Soergel: return l1 / sum_max;
    case Measure::Kulczynski: return sum_min > 0 ? l1 / sum_min : inf;
    case Measure::Camberra: return cam;
    case Measure::Divergence: return 2 * div;
    case Measure::Neyman: return ney;
    }
    return inf;
}

}  // namespace testing

#pragma once

// Shared assembly of windowed verification reports for ring elements and
// projective points.

#include <algorithm>
#include <functional>
#include <vector>

#include "arithfrac/ifs.hpp"

namespace arithfrac::detail {

template <class Element>
struct ImageHit {
  Element element;
  std::size_t map;  // 1-based
};

/// `sample` must be sorted; `in_window` selects the elements that are checked.
template <class Element, class InWindow, class IsFixed>
void assemble_report(BasicVerificationReport<Element>& report, const std::vector<Element>& sample,
                     std::vector<ImageHit<Element>> hits, std::vector<Element> bases, InWindow in_window,
                     IsFixed is_fixed, std::size_t max_witnesses) {
  std::sort(hits.begin(), hits.end(), [](const auto& l, const auto& r) {
    if (auto c = l.element <=> r.element; c != 0) return c < 0;
    return l.map < r.map;
  });

  std::vector<Element> covered;
  std::vector<std::size_t> maps;
  for (std::size_t k = 0; k < hits.size();) {
    std::size_t end = k;
    maps.clear();
    while (end < hits.size() && hits[end].element == hits[k].element) {
      if (maps.empty() || maps.back() != hits[end].map) maps.push_back(hits[end].map);
      ++end;
    }
    for (std::size_t i = 0; i < maps.size(); ++i) {
      for (std::size_t j = i + 1; j < maps.size(); ++j) {
        ++report.overlap_count;
        if (report.overlaps.size() < max_witnesses) report.overlaps.push_back({hits[k].element, maps[i], maps[j]});
      }
    }
    covered.push_back(hits[k].element);
    k = end;
  }

  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  for (const auto& x : sample) {
    if (!in_window(x)) continue;
    ++report.checked;
    if (std::binary_search(covered.begin(), covered.end(), x)) continue;
    if (std::binary_search(bases.begin(), bases.end(), x)) {
      report.uncovered_seeds.push_back(x);
    } else if (report.gaps.size() < max_witnesses) {
      report.gaps.push_back(x);
    }
  }
  for (const auto& p : bases) {
    if (!is_fixed(p)) report.seed_only.push_back(p);
  }

  if (report.overlap_count > 0) {
    report.status = VerificationStatus::overlap;
  } else if (!report.gaps.empty()) {
    report.status = VerificationStatus::gap;
  } else if (!report.uncovered_seeds.empty()) {
    report.status = VerificationStatus::seed_not_covered;
  } else {
    report.status = VerificationStatus::verified;
  }
}

}  // namespace arithfrac::detail

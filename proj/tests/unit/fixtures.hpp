#pragma once
// Solved reference problems, built once per test binary.

#include <map>
#include <memory>

#include "wedge/spectra.hpp"

namespace fixture {

inline std::shared_ptr<const wedge::Spectra> spectra(const std::string& name) {
    static std::map<std::string, std::shared_ptr<const wedge::Spectra>> cache;
    auto& s = cache[name];
    if (!s) {
        auto sol = std::make_shared<const wedge::RhpSolution>(wedge::solve_rhp(wedge::reference_problem(name)));
        s = std::make_shared<const wedge::Spectra>(sol);
    }
    return s;
}

inline double rel(const wedge::Vec2& a, const wedge::Vec2& b) {
    return (a - b).norm() / std::max(1e-300, b.norm());
}

}  // namespace fixture

#include "lptensor/core/schedule.hpp"

#include "lptensor/core/error.hpp"

#include <cmath>

namespace lpt {

EpsilonSchedule::EpsilonSchedule(Kind kind, double budget, double fraction, std::size_t cells)
    : kind_(kind), budget_(budget), fraction_(fraction), cells_(cells) {
    if (!(budget > 0.0)) throw DomainError("schedule budget must be positive");
    if (!(fraction > 0.0 && fraction <= 1.0)) throw DomainError("schedule fraction must lie in (0,1]");
    if (kind == Kind::uniform && cells == 0) throw DomainError("uniform schedule needs at least one cell");
}

EpsilonSchedule EpsilonSchedule::uniform(double budget, std::size_t cells, double fraction) {
    return EpsilonSchedule(Kind::uniform, budget, fraction, cells);
}

EpsilonSchedule EpsilonSchedule::geometric(double budget, double fraction) {
    return EpsilonSchedule(Kind::geometric, budget, fraction, 0);
}

double EpsilonSchedule::cell(std::size_t n, std::size_t m) const {
    if (kind_ == Kind::uniform) return bound() / static_cast<double>(cells_);
    // sum over ordered pairs n != m of 2^{-(n+m)} is 2/3
    return bound() * 1.5 * std::ldexp(1.0, -static_cast<int>(n + m));
}

double EpsilonSchedule::cell(std::size_t k) const {
    if (kind_ == Kind::uniform) return bound() / static_cast<double>(cells_);
    return bound() * std::ldexp(1.0, -static_cast<int>(k + 1));
}

EpsilonSchedule EpsilonSchedule::scaled(double share) const {
    return EpsilonSchedule(kind_, budget_ * share, fraction_, cells_);
}

EpsilonSchedule EpsilonSchedule::with_cells(std::size_t cells) const {
    return EpsilonSchedule(kind_, budget_, fraction_, cells);
}

}  // namespace lpt

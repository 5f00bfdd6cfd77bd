#include "dipolar/errors.hpp"
#include "dipolar/rp.hpp"

namespace dipolar {

EnergyResult TileEnergyCache::get(const TileSide& h1, const TileSide& h2) {
    const auto key = std::make_pair(h1, h2);
    {
        std::lock_guard lock(mutex_);
        if (auto it = values_.find(key); it != values_.end()) return it->second;
    }
    auto e = checkerboard_energy({h1, h2}, J_, budget_);
    std::lock_guard lock(mutex_);
    return values_.emplace(key, std::move(e)).first->second;
}

ChessboardReport chessboard_estimate_check(const StraightLineConfig& cfg, TileEnergyCache& cache,
                                           const ErrorBudget& budget) {
    const double J = cache.J();
    if (!(J > 0.0)) throw DomainError("chessboard_estimate_check: J must be positive");
    const auto L = cfg.side();
    ChessboardReport r;
    r.lhs = hamiltonian_direct(to_spin_configuration(cfg), J, budget);

    const auto tiles = decompose_tiles(cfg);
    r.tile_count = tiles.tiles.size();
    auto literal = [L](const TileSide& s) { return s.is_infinite() ? TileSide::finite(L) : s; };
    for (const auto& t : tiles.tiles) {
        const double area = static_cast<double>(t.area());
        const auto e = cache.get(t.side1, t.side2);
        r.rhs += area * e.value;
        r.rhs_error += area * e.error_bound;
        const auto lit = cache.get(literal(t.side1), literal(t.side2));
        r.rhs_literal += area * lit.value;
        r.rhs_literal_error += area * lit.error_bound;
    }
    return r;
}

ChessboardReport chessboard_estimate_check(const StraightLineConfig& cfg, double J, const ErrorBudget& budget) {
    TileEnergyCache cache(J, budget);
    return chessboard_estimate_check(cfg, cache, budget);
}

}  // namespace dipolar

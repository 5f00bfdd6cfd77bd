#pragma once

// Straight-line configurations on the torus, their tile decomposition and
// the chessboard lower bound H_L(sigma) >= sum_T |T| E(h1(T), h2(T)).

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "dipolar/energies.hpp"

namespace dipolar {

/// Configuration whose contours are full lines. A cut at position c lies
/// between rows (or columns) c - 1 and c. Vertical cuts sit on the x1 axis and
/// bound tile widths; horizontal cuts sit on the x2 axis and bound heights.
class StraightLineConfig {
public:
    /// Sorts and validates the cuts; throws ParityViolation when a cut set has
    /// odd size and DomainError for duplicates or out-of-range positions.
    StraightLineConfig(std::int64_t L, std::vector<std::int64_t> vertical_cuts,
                       std::vector<std::int64_t> horizontal_cuts, int base_sign = 1);

    std::int64_t side() const { return L_; }
    const std::vector<std::int64_t>& vertical_cuts() const { return vertical_; }
    const std::vector<std::int64_t>& horizontal_cuts() const { return horizontal_; }
    int base_sign() const { return base_; }

    bool operator==(const StraightLineConfig&) const = default;

private:
    std::int64_t L_;
    std::vector<std::int64_t> vertical_;
    std::vector<std::int64_t> horizontal_;
    int base_;
};

SpinConfiguration to_spin_configuration(const StraightLineConfig& cfg);

/// Inverse of to_spin_configuration; nullopt when some contour is not a full line.
std::optional<StraightLineConfig> extract_contours(const SpinConfiguration& config);

struct Tile {
    std::int64_t origin1 = 0;
    std::int64_t origin2 = 0;
    std::int64_t width = 0;   // extent along x1
    std::int64_t height = 0;  // extent along x2
    int sign = 1;
    TileSide side1;  // width, or infinity when the axis has no cut
    TileSide side2;
    std::int64_t area() const { return width * height; }
};

struct TileDecomposition {
    std::vector<Tile> tiles;
    std::int64_t total_area = 0;
};

TileDecomposition decompose_tiles(const StraightLineConfig& cfg);

/// Thread-safe memo of checkerboard_energy keyed by tile sides.
class TileEnergyCache {
public:
    TileEnergyCache(double J, ErrorBudget budget) : J_(J), budget_(budget) {}
    EnergyResult get(const TileSide& h1, const TileSide& h2);
    double J() const { return J_; }

private:
    double J_;
    ErrorBudget budget_;
    std::mutex mutex_;
    std::map<std::pair<TileSide, TileSide>, EnergyResult> values_;
};

struct ChessboardReport {
    EnergyResult lhs;     // H_L(sigma)
    double rhs = 0.0;     // sum_T |T| E(h1(T), h2(T)), cut-free axes as infinity
    double rhs_error = 0.0;
    double rhs_literal = 0.0;  // same with cut-free axes taken as width L
    double rhs_literal_error = 0.0;
    std::size_t tile_count = 0;

    double margin() const { return lhs.value - rhs; }
    double certificate() const { return lhs.error_bound + rhs_error; }
    bool violated() const { return margin() < -certificate(); }
    double literal_margin() const { return lhs.value - rhs_literal; }
    double literal_certificate() const { return lhs.error_bound + rhs_literal_error; }
};

ChessboardReport chessboard_estimate_check(const StraightLineConfig& cfg, double J, const ErrorBudget& budget = {});
ChessboardReport chessboard_estimate_check(const StraightLineConfig& cfg, TileEnergyCache& cache,
                                           const ErrorBudget& budget = {});

/// Positions are shuffled and paired; each pair becomes two cuts with
/// probability cut_density. The base sign is drawn from the same stream.
StraightLineConfig sample_config(std::int64_t L, double cut_density, std::uint64_t seed);

}  // namespace dipolar

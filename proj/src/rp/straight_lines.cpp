#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "dipolar/errors.hpp"
#include "dipolar/rp.hpp"

namespace dipolar {

namespace {

std::vector<std::int64_t> normalized_cuts(std::vector<std::int64_t> cuts, std::int64_t L, const char* axis) {
    std::sort(cuts.begin(), cuts.end());
    if (std::adjacent_find(cuts.begin(), cuts.end()) != cuts.end())
        throw DomainError(std::string("StraightLineConfig: duplicate ") + axis + " cut");
    for (auto c : cuts)
        if (c < 0 || c >= L) throw DomainError(std::string("StraightLineConfig: ") + axis + " cut out of range");
    if (cuts.size() % 2 != 0)
        throw ParityViolation(std::string("StraightLineConfig: odd number of ") + axis + " cuts");
    return cuts;
}

// (-1)^{#cuts <= x}
int parity_sign(const std::vector<std::int64_t>& cuts, std::int64_t x) {
    const auto n = std::upper_bound(cuts.begin(), cuts.end(), x) - cuts.begin();
    return n % 2 == 0 ? 1 : -1;
}

struct Segment {
    std::int64_t origin;
    std::int64_t length;
    bool open;  // axis without cuts
};

std::vector<Segment> segments(const std::vector<std::int64_t>& cuts, std::int64_t L) {
    if (cuts.empty()) return {{0, L, true}};
    std::vector<Segment> out;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const std::int64_t next = i + 1 < cuts.size() ? cuts[i + 1] : cuts.front() + L;
        out.push_back({cuts[i], next - cuts[i], false});
    }
    return out;
}

// Positions c where line c - 1 and line c differ; nullopt if some line pair
// differs only partially.
template <class At>
std::optional<std::vector<std::int64_t>> full_lines(std::int64_t L, At at) {
    std::vector<std::int64_t> cuts;
    for (std::int64_t c = 0; c < L; ++c) {
        std::int64_t differ = 0;
        for (std::int64_t t = 0; t < L; ++t) differ += at(c - 1, t) != at(c, t);
        if (differ == L)
            cuts.push_back(c);
        else if (differ != 0)
            return std::nullopt;
    }
    return cuts;
}

}  // namespace

StraightLineConfig::StraightLineConfig(std::int64_t L, std::vector<std::int64_t> vertical_cuts,
                                       std::vector<std::int64_t> horizontal_cuts, int base_sign)
    : L_(L), base_(base_sign) {
    if (L < 2) throw DomainError("StraightLineConfig: L must be >= 2");
    if (base_sign != 1 && base_sign != -1) throw DomainError("StraightLineConfig: base sign must be +-1");
    vertical_ = normalized_cuts(std::move(vertical_cuts), L, "vertical");
    horizontal_ = normalized_cuts(std::move(horizontal_cuts), L, "horizontal");
}

SpinConfiguration to_spin_configuration(const StraightLineConfig& cfg) {
    const std::int64_t L = cfg.side();
    std::vector<std::int8_t> s(static_cast<std::size_t>(L * L));
    for (std::int64_t x1 = 0; x1 < L; ++x1) {
        const int row = cfg.base_sign() * parity_sign(cfg.vertical_cuts(), x1);
        for (std::int64_t x2 = 0; x2 < L; ++x2)
            s[static_cast<std::size_t>(x1 * L + x2)] =
                static_cast<std::int8_t>(row * parity_sign(cfg.horizontal_cuts(), x2));
    }
    return SpinConfiguration(L, std::move(s));
}

std::optional<StraightLineConfig> extract_contours(const SpinConfiguration& config) {
    const std::int64_t L = config.side();
    if (L < 2) return std::nullopt;
    auto vertical = full_lines(L, [&](std::int64_t c, std::int64_t t) { return config.at(c, t); });
    auto horizontal = full_lines(L, [&](std::int64_t c, std::int64_t t) { return config.at(t, c); });
    if (!vertical || !horizontal) return std::nullopt;
    if (vertical->size() % 2 != 0 || horizontal->size() % 2 != 0) return std::nullopt;
    const int base = config.at(0, 0) * parity_sign(*vertical, 0) * parity_sign(*horizontal, 0);
    StraightLineConfig cfg(L, std::move(*vertical), std::move(*horizontal), base);
    if (!(to_spin_configuration(cfg) == config)) return std::nullopt;
    return cfg;
}

TileDecomposition decompose_tiles(const StraightLineConfig& cfg) {
    const std::int64_t L = cfg.side();
    TileDecomposition out;
    for (const auto& a : segments(cfg.vertical_cuts(), L))
        for (const auto& b : segments(cfg.horizontal_cuts(), L)) {
            Tile t;
            t.origin1 = a.origin;
            t.origin2 = b.origin;
            t.width = a.length;
            t.height = b.length;
            t.sign = cfg.base_sign() * parity_sign(cfg.vertical_cuts(), a.origin) *
                     parity_sign(cfg.horizontal_cuts(), b.origin);
            t.side1 = a.open ? TileSide::infinite() : TileSide::finite(a.length);
            t.side2 = b.open ? TileSide::infinite() : TileSide::finite(b.length);
            out.total_area += t.area();
            out.tiles.push_back(t);
        }
    return out;
}

StraightLineConfig sample_config(std::int64_t L, double cut_density, std::uint64_t seed) {
    if (L < 2) throw DomainError("sample_config: L must be >= 2");
    if (!(cut_density >= 0.0 && cut_density <= 1.0)) throw DomainError("sample_config: density must lie in [0, 1]");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution keep(cut_density);
    auto draw_axis = [&] {
        std::vector<std::int64_t> pos(static_cast<std::size_t>(L));
        std::iota(pos.begin(), pos.end(), 0);
        std::shuffle(pos.begin(), pos.end(), rng);
        std::vector<std::int64_t> cuts;
        for (std::size_t i = 0; i + 1 < pos.size(); i += 2)
            if (keep(rng)) {
                cuts.push_back(pos[i]);
                cuts.push_back(pos[i + 1]);
            }
        return cuts;
    };
    auto vertical = draw_axis();
    auto horizontal = draw_axis();
    const int base = std::bernoulli_distribution(0.5)(rng) ? 1 : -1;
    return StraightLineConfig(L, std::move(vertical), std::move(horizontal), base);
}

}  // namespace dipolar

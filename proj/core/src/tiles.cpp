#include "panogaze/tiles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace panogaze::predict {

TileIndex tile_of(NormalizedPoint p, TileGrid g) {
    if (g.rows < 1 || g.cols < 1) throw std::invalid_argument("tile_of: invalid grid");
    TileIndex t;
    t.row = std::clamp(static_cast<int>(std::floor(p.y * g.rows)), 0, g.rows - 1);
    t.col = std::clamp(static_cast<int>(std::floor(p.x * g.cols)), 0, g.cols - 1);
    return t;
}

double unified_euclidean(NormalizedPoint a, NormalizedPoint b) {
    const double dx = geo::wraparound_dx(a.x, b.x);
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

int manhattan_tile_distance(NormalizedPoint a, NormalizedPoint b, TileGrid g, bool wrap_columns) {
    const TileIndex ta = tile_of(a, g);
    const TileIndex tb = tile_of(b, g);
    const int dr = std::abs(ta.row - tb.row);
    int dc = std::abs(ta.col - tb.col);
    if (wrap_columns) dc = std::min(dc, g.cols - dc);
    return dr + dc;
}

MetricReport evaluate(std::span<const PredictionRecord> records, TileGrid g) {
    if (records.empty()) throw std::invalid_argument("evaluate: empty record list");
    MetricReport r;
    std::size_t hits = 0;
    for (const PredictionRecord& rec : records) {
        r.mean_euclidean += unified_euclidean(rec.predicted, rec.truth);
        r.mean_manhattan += manhattan_tile_distance(rec.predicted, rec.truth, g);
        if (tile_of(rec.predicted, g) == tile_of(rec.truth, g)) ++hits;
    }
    const auto n = static_cast<double>(records.size());
    r.mean_euclidean /= n;
    r.mean_manhattan /= n;
    r.tile_accuracy = static_cast<double>(hits) / n;
    r.count = records.size();
    return r;
}

PrefetchReport simulate_tile_prefetch(std::span<const PredictionRecord> records, TileGrid g,
                                      int viewport_halfwidth) {
    if (viewport_halfwidth < 0)
        throw std::invalid_argument("simulate_tile_prefetch: halfwidth must be >= 0");
    PrefetchReport rep;
    rep.count = records.size();
    if (records.empty()) return rep;

    const int hw = viewport_halfwidth;
    const int col_span = std::min(2 * hw + 1, g.cols);
    std::size_t hits = 0;
    double fetched = 0.0;
    for (const PredictionRecord& rec : records) {
        const TileIndex pred = tile_of(rec.predicted, g);
        const TileIndex truth = tile_of(rec.truth, g);

        const int row_lo = std::max(0, pred.row - hw);
        const int row_hi = std::min(g.rows - 1, pred.row + hw);
        const int row_span = row_hi - row_lo + 1;
        fetched += static_cast<double>(row_span) * col_span /
                   (static_cast<double>(g.rows) * g.cols);

        int dc = std::abs(pred.col - truth.col);
        dc = std::min(dc, g.cols - dc);
        if (truth.row >= row_lo && truth.row <= row_hi && dc <= hw) ++hits;
    }
    rep.hit_ratio = static_cast<double>(hits) / static_cast<double>(records.size());
    rep.fetched_fraction = fetched / static_cast<double>(records.size());
    return rep;
}

} // namespace panogaze::predict

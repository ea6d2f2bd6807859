#pragma once

#include <span>
#include <vector>

#include "panogaze/geo.hpp"

namespace panogaze::predict {

using geo::NormalizedPoint;

struct TileGrid {
    int rows = 8;
    int cols = 8;
};

struct TileIndex {
    int row = 0;
    int col = 0;
    bool operator==(const TileIndex&) const = default;
};

struct PredictionRecord {
    double t = 0.0;
    NormalizedPoint predicted;
    NormalizedPoint truth;
};

struct MetricReport {
    double mean_euclidean = 0.0;
    double mean_manhattan = 0.0;
    double tile_accuracy = 0.0;
    std::size_t count = 0;
};

// row = floor(y*rows) (y=1 clamps to the last row), col = floor(x*cols).
TileIndex tile_of(NormalizedPoint p, TileGrid g);

// sqrt(wraparound_dx^2 + dy^2) with width and height unified to 1.
double unified_euclidean(NormalizedPoint a, NormalizedPoint b);

// |dr| + circular column distance; wrap_columns=false gives the planar
// variant for strict-paper comparison runs.
int manhattan_tile_distance(NormalizedPoint a, NormalizedPoint b, TileGrid g,
                            bool wrap_columns = true);

// Means of the two distances plus the exact-tile hit fraction.
MetricReport evaluate(std::span<const PredictionRecord> records, TileGrid g);

struct PrefetchReport {
    double hit_ratio = 0.0;
    double fetched_fraction = 0.0; // mean fraction of grid tiles fetched
    std::size_t count = 0;
};

// Prefetch the Chebyshev neighborhood of the predicted tile (columns wrap,
// rows clamp at the grid edge); a hit means the truth tile is inside it.
PrefetchReport simulate_tile_prefetch(std::span<const PredictionRecord> records, TileGrid g,
                                      int viewport_halfwidth);

} // namespace panogaze::predict

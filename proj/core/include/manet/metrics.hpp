#pragma once

#include <optional>

#include "manet/cds.hpp"
#include "manet/routing.hpp"

namespace manet {

/// Fraction of session-window snapshots with a present path. Identical for
/// ORA and LORA timelines of the same session.
double percent_connectivity(const PathTimeline& timeline);

/// Sum over maximal constant-path runs of (hop count x run length), divided
/// by the number of path-bearing snapshots. Lifetimes are counted in
/// snapshot units. nullopt when no path ever existed.
std::optional<double> time_averaged_hop_count(const PathTimeline& timeline);

/// Mean lifetime, in seconds, over every path the LORA strategy discovered:
/// consecutive snapshots the path stayed in use times the sample interval.
/// Throws on an ORA timeline (routes are rebuilt every snapshot there);
/// nullopt when no path was ever discovered.
std::optional<double> average_route_lifetime(const PathTimeline& timeline, double sample_interval);

/// Mean CDS node count over snapshots with a present CDS; nullopt when none.
std::optional<double> average_cds_size(const CdsTimeline& timeline);

/// LORA analogue of route lifetime: mean over constructed CDS of consecutive
/// snapshots it stayed valid, in seconds. Throws on an ORA timeline.
std::optional<double> average_cds_lifetime(const CdsTimeline& timeline, double sample_interval);

/// Fraction of snapshots whose graph held a CDS (i.e. was connected).
double cds_connected_fraction(const CdsTimeline& timeline);

struct SessionMetrics {
    double connectivity_fraction = 0.0;
    std::optional<double> time_avg_hop_count;
    std::optional<double> avg_route_lifetime; // LORA only
};
SessionMetrics session_metrics(const PathTimeline& timeline, double sample_interval);

struct CdsMetrics {
    std::optional<double> avg_cds_size;
    std::optional<double> avg_cds_lifetime; // LORA only
    double connected_fraction = 0.0;
};
CdsMetrics cds_metrics(const CdsTimeline& timeline, double sample_interval);

} // namespace manet

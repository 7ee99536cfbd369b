#include "manet/metrics.hpp"

#include <stdexcept>

namespace manet {

namespace {

/// Counts present snapshots and maximal runs of one unchanged value over a
/// timeline's entries. A run ends when the entry goes absent or changes.
template <typename Entries>
void count_runs(const Entries& entries, long& present, long& runs) {
    present = 0;
    runs = 0;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (!entries[k])
            continue;
        ++present;
        if (k == 0 || !entries[k - 1] || !(*entries[k - 1] == *entries[k]))
            ++runs;
    }
}

} // namespace

double percent_connectivity(const PathTimeline& timeline) {
    if (timeline.entries.empty())
        return 0.0;
    long present = 0;
    for (const auto& entry : timeline.entries)
        present += entry.has_value();
    return static_cast<double>(present) / static_cast<double>(timeline.entries.size());
}

std::optional<double> time_averaged_hop_count(const PathTimeline& timeline) {
    // Sum of (hop count x run length) over runs equals the plain sum of hop
    // counts over path-bearing snapshots, so no run decomposition is needed.
    long present = 0;
    long hop_sum = 0;
    for (const auto& entry : timeline.entries) {
        if (entry) {
            ++present;
            hop_sum += entry->hop_count();
        }
    }
    if (present == 0)
        return std::nullopt;
    return static_cast<double>(hop_sum) / static_cast<double>(present);
}

std::optional<double> average_route_lifetime(const PathTimeline& timeline, double sample_interval) {
    if (timeline.strategy != Strategy::Lora)
        throw std::invalid_argument("route lifetime is only defined for lora timelines");
    long present = 0, runs = 0;
    count_runs(timeline.entries, present, runs);
    if (runs == 0)
        return std::nullopt;
    return static_cast<double>(present) / static_cast<double>(runs) * sample_interval;
}

std::optional<double> average_cds_size(const CdsTimeline& timeline) {
    long present = 0;
    long size_sum = 0;
    for (const auto& entry : timeline.entries) {
        if (entry) {
            ++present;
            size_sum += static_cast<long>(entry->size());
        }
    }
    if (present == 0)
        return std::nullopt;
    return static_cast<double>(size_sum) / static_cast<double>(present);
}

std::optional<double> average_cds_lifetime(const CdsTimeline& timeline, double sample_interval) {
    if (timeline.strategy != Strategy::Lora)
        throw std::invalid_argument("cds lifetime is only defined for lora timelines");
    long present = 0, runs = 0;
    count_runs(timeline.entries, present, runs);
    if (runs == 0)
        return std::nullopt;
    return static_cast<double>(present) / static_cast<double>(runs) * sample_interval;
}

double cds_connected_fraction(const CdsTimeline& timeline) {
    if (timeline.entries.empty())
        return 0.0;
    long present = 0;
    for (const auto& entry : timeline.entries)
        present += entry.has_value();
    return static_cast<double>(present) / static_cast<double>(timeline.entries.size());
}

SessionMetrics session_metrics(const PathTimeline& timeline, double sample_interval) {
    SessionMetrics m;
    m.connectivity_fraction = percent_connectivity(timeline);
    m.time_avg_hop_count = time_averaged_hop_count(timeline);
    if (timeline.strategy == Strategy::Lora)
        m.avg_route_lifetime = average_route_lifetime(timeline, sample_interval);
    return m;
}

CdsMetrics cds_metrics(const CdsTimeline& timeline, double sample_interval) {
    CdsMetrics m;
    m.avg_cds_size = average_cds_size(timeline);
    if (timeline.strategy == Strategy::Lora)
        m.avg_cds_lifetime = average_cds_lifetime(timeline, sample_interval);
    m.connected_fraction = cds_connected_fraction(timeline);
    return m;
}

} // namespace manet

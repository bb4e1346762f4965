#pragma once

#include <span>
#include <string>

#include "aoi/config.hpp"
#include "aoi/experiments.hpp"

namespace aoi {

/// Fixed CSV column order.
inline constexpr const char* kCsvHeader =
    "discipline,family,shape,lambda,mu,n_arrivals,n_reps,seed,avg_age,avg_age_ci,"
    "mean_delay,mean_delay_ci,delay_var,informative_frac,a_min,pk_delay,gginf_age";

/// Numbers printed with 12 significant digits; inf/nan spelled out.
std::string format_number(double v);

/// One CSV row (no trailing newline). `seed` is the base seed of the run.
std::string csv_row(const FrontierPoint& p, std::uint64_t n_arrivals, std::uint32_t n_reps,
                    std::uint64_t seed);

/// Header line plus one row per point; header only for an empty list.
std::string to_csv(std::span<const FrontierPoint> points, const SweepConfig& cfg);

/// Structured JSON object for one metrics report.
std::string metrics_to_json(const MetricsReport& report);

/// Results document: config echo, seeds, every point, both frontiers and the
/// scalarized picks over cfg.nu_grid. Contains no timestamps, so identical
/// inputs yield identical bytes.
std::string to_json(std::span<const FrontierPoint> points, const SweepConfig& cfg);

/// gnuplot script with inline data blocks: avg_age on x, mean_delay on y,
/// one series per discipline/family, plus the mean-delay frontier.
std::string plot_script(std::span<const FrontierPoint> points,
                        std::span<const FrontierPoint> frontier, const std::string& title);

/// Writes whichever of paths.csv / paths.json / paths.plot are non-empty.
/// Throws IoError naming the path on failure.
void emit_outputs(std::span<const FrontierPoint> points, std::span<const FrontierPoint> frontier,
                  const SweepConfig& cfg, const OutputPaths& paths);

}  // namespace aoi

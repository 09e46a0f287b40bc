#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "memeflow/competition.hpp"
#include "memeflow/energy.hpp"
#include "memeflow/features.hpp"
#include "memeflow/bubble.hpp"
#include "memeflow/fitting.hpp"
#include "memeflow/timeseries.hpp"

namespace memeflow::io {

// All numeric output is rendered with 17 significant digits so golden files
// are stable across runs.
std::string format_double(double value);

// ---- CSV -------------------------------------------------------------

// `t,y` with a header row. Malformed rows raise CsvError with the 1-based
// line number.
TimeSeries read_timeseries_csv(std::istream& in);
TimeSeries read_timeseries_csv(const std::string& path);
void write_timeseries_csv(std::ostream& out, const TimeSeries& series);

// Wide trajectory table `t,y1,...,yN`; all series must share one grid.
void write_wide_csv(std::ostream& out, const std::vector<TimeSeries>& series);

// `id,dof_index,energy`, rows grouped by id, dof_index contiguous from 0
// within each id.
ConstituentSet read_constituents_csv(std::istream& in);
ConstituentSet read_constituents_csv(const std::string& path);

// Numeric table with a header of column names. Rows with missing or
// non-numeric cells are dropped and counted in Dataset::rows_dropped.
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv(const std::string& path);

// ---- JSON ------------------------------------------------------------

std::string to_json(const FitReport& report);
std::string to_json(const BubbleVerdict& verdict);
std::string to_json(const std::vector<FeatureScore>& scores);
std::string features_csv(const std::vector<FeatureScore>& scores);

// {"affinities": [...], "delta_es": [...], "alpha": [[...]]}; an optional
// "normalized" flag defaults to false.
CompetitionSystem read_system_json(std::istream& in);
CompetitionSystem read_system_json(const std::string& path);

// ---- flat key=value config --------------------------------------------

// Blank lines and lines starting with '#' are skipped; later keys win.
std::map<std::string, std::string> read_config(std::istream& in);
std::map<std::string, std::string> read_config(const std::string& path);

}  // namespace memeflow::io

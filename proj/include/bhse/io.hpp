// Deterministic artifact writers: CSV for sampled data, JSON for headers and
// reports. No timestamps, fixed number formatting, keys in sorted order, so
// repeated runs with the same inputs produce byte-identical files.
#pragma once

#include <string>

#include "bhse/grid.hpp"
#include "json.hpp"

namespace bhse {

using json = nlohmann::json;

// Shortest decimal form that round-trips the double exactly.
std::string format_number(double v);

// coordinate,re,im rows after a header line.
void write_csv(const std::string& path, const GridFunction& u);
void write_csv(const std::string& path, const TimeSignal& g);
// t,x,re,im rows, slices in time order.
void write_csv(const std::string& path, const SpaceTimeField& f);

json header_json(const GridFunction& u);
json header_json(const TimeSignal& g);

void write_json(const std::string& path, const json& j);

// Parses the file; throws ConfigError carrying the parse location on
// malformed input (CLI maps that to exit code 2).
json read_json(const std::string& path);

void ensure_dir(const std::string& path);

}  // namespace bhse

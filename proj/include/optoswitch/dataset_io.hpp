#ifndef OPTOSWITCH_DATASET_IO_HPP
#define OPTOSWITCH_DATASET_IO_HPP

#include "optoswitch/sweep.hpp"

#include <string>

namespace optoswitch::io
{
// CSV: '#'-prefixed metadata lines, then a "name[unit]" header row, then
// numeric rows ('.' decimal separator, NaN spelled "NaN").
void write_csv(const sweep::Dataset& ds, const std::string& path, int precision = 12);

// JSON: one object with "metadata", "columns" and "rows".
void write_json(const sweep::Dataset& ds, const std::string& path, int precision = 12);

sweep::Dataset read_csv(const std::string& path);

std::string format_dataset_csv(const sweep::Dataset& ds, int precision = 12);

} // namespace optoswitch::io

#endif

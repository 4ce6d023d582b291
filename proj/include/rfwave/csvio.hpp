#pragma once

///
/// Minimal strict CSV: comma-separated numeric tables with one header row,
/// written at full round-trip precision (%.17g) so artifacts are
/// byte-deterministic and re-loadable without loss.
///

#include <string>
#include <vector>

namespace rfwave {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;  ///< each row's size equals header's
};

/// Formats a double with printf %.17g (shortest exact round-trip form used
/// throughout the artifact writers).
std::string format_full(double x);

/// Writes header + rows; throws on I/O failure or ragged rows.
void write_csv(const std::string& path, const CsvTable& table);

/// Strict reader: every row must parse as doubles and match the header
/// width; throws otherwise.
CsvTable read_csv(const std::string& path);

}  // namespace rfwave

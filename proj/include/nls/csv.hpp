#pragma once

#include "nls/gating.hpp"

#include <string>
#include <vector>

namespace nls {

// Plain CSV with '#'-prefixed metadata lines before the column header.
// Formatting is locale-independent and fixed-precision so identical inputs
// produce byte-identical files.
struct CsvTable {
  std::vector<std::string> meta;     // written as "# <line>"
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string format_csv(const CsvTable& table);
void write_csv(const CsvTable& table, const std::string& path);

// Long-form spectrogram table (t_fs, w_ev, value) with gate parameters in
// the metadata header.
CsvTable spectrogram_table(const Spectrogram& sg);

// Small gnuplot heatmap script pointing at a long-form spectrogram CSV.
std::string spectrogram_gnuplot(const std::string& csv_name,
                                const Spectrogram& sg);

} // namespace nls

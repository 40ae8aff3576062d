// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TMHD_CSV_HPP
#define TMHD_CSV_HPP

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace tmhd
{

// Comma-separated numeric table with a header row; values use 17 significant digits so
// that doubles round-trip exactly.
class CsvWriter
{
public:
  CsvWriter(const std::filesystem::path &path, const std::vector<std::string> &columns);

  void Row(const std::vector<double> &values);
  void Flush();

private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t width_;
};

std::string FormatDouble(double v);

struct CsvTable
{
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  // Throws FormatError if the column is absent.
  std::size_t ColumnIndex(const std::string &name) const;
  std::vector<double> Column(const std::string &name) const;
};

// Throws FormatError with the file name and line number on malformed input.
CsvTable ReadCsv(const std::filesystem::path &path);

}  // namespace tmhd

#endif  // TMHD_CSV_HPP

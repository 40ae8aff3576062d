// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#include "tmhd/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include "tmhd/errors.hpp"

namespace tmhd
{

namespace
{

std::vector<std::string> Split(const std::string &line)
{
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ','))
  {
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',')
  {
    out.emplace_back();
  }
  return out;
}

}  // namespace

std::string FormatDouble(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path &path, const std::vector<std::string> &columns)
  : path_(path), out_(path), width_(columns.size())
{
  if (!out_)
  {
    throw FormatError("cannot open " + path.string() + " for writing");
  }
  for (std::size_t i = 0; i < columns.size(); ++i)
  {
    out_ << (i ? "," : "") << columns[i];
  }
  out_ << '\n';
}

void CsvWriter::Row(const std::vector<double> &values)
{
  if (values.size() != width_)
  {
    throw std::invalid_argument("CSV row width does not match the header");
  }
  for (std::size_t i = 0; i < values.size(); ++i)
  {
    out_ << (i ? "," : "") << FormatDouble(values[i]);
  }
  out_ << '\n';
}

void CsvWriter::Flush()
{
  out_.flush();
  if (!out_)
  {
    throw FormatError("write failed for " + path_.string());
  }
}

std::size_t CsvTable::ColumnIndex(const std::string &name) const
{
  for (std::size_t i = 0; i < columns.size(); ++i)
  {
    if (columns[i] == name)
    {
      return i;
    }
  }
  throw FormatError("CSV has no column '" + name + "'");
}

std::vector<double> CsvTable::Column(const std::string &name) const
{
  const std::size_t idx = ColumnIndex(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto &r : rows)
  {
    out.push_back(r[idx]);
  }
  return out;
}

CsvTable ReadCsv(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw FormatError("cannot open CSV " + path.string());
  }
  CsvTable table;
  std::string line;
  if (!std::getline(in, line))
  {
    throw FormatError(path.string() + ": empty file");
  }
  table.columns = Split(line);
  long lineno = 1;
  while (std::getline(in, line))
  {
    ++lineno;
    if (line.empty())
    {
      continue;
    }
    const auto cells = Split(line);
    if (cells.size() != table.columns.size())
    {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(table.columns.size()) + " fields, got " +
                        std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
      char *end = nullptr;
      const double v = std::strtod(cells[i].c_str(), &end);
      if (cells[i].empty() || *end != '\0')
      {
        throw FormatError(path.string() + ":" + std::to_string(lineno) + ": column '" +
                          table.columns[i] + "': not a number '" + cells[i] + "'");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace tmhd

#pragma once

// CSV emission in full double precision (%.17g round-trips exactly).

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dispflow/complex_flow.hpp"
#include "dispflow/energy.hpp"
#include "dispflow/errors.hpp"
#include "dispflow/hasimoto_frame.hpp"

namespace dispflow::harness {

inline constexpr const char* kGeometricHeader = "t,l2_ux_sq,e1,e2,h2_seminorm_sq,f_ratio";
inline constexpr const char* kComplexHeader = "t,l2_q_sq,test1,test2,laurey1_re,laurey1_im,laurey2";

namespace detail {

inline std::string csv_row(std::initializer_list<double> values) {
  std::string row;
  char buf[32];
  for (double v : values) {
    std::snprintf(buf, sizeof buf, "%.16e", v);
    if (!row.empty()) row += ',';
    row += buf;
  }
  return row;
}

inline void write_lines(const std::string& path, const std::string& header,
                        const std::vector<std::string>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << header << '\n';
  for (const auto& r : rows) out << r << '\n';
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace detail

inline void emit_timeseries(const std::string& path, const std::vector<EnergyReport>& reports) {
  if (reports.empty()) throw ParameterError("no reports to write");
  std::vector<std::string> rows;
  for (const auto& r : reports) {
    rows.push_back(detail::csv_row({r.time, r.l2_ux_sq, r.e1, r.e2, r.h2_seminorm_sq, r.f_ratio}));
  }
  detail::write_lines(path, kGeometricHeader, rows);
}

inline void emit_timeseries(const std::string& path, const std::vector<ComplexReport>& reports) {
  if (reports.empty()) throw ParameterError("no reports to write");
  std::vector<std::string> rows;
  for (const auto& r : reports) {
    rows.push_back(detail::csv_row({r.time, r.l2_q_sq, r.test1, r.test2, r.laurey1.real(),
                                    r.laurey1.imag(), r.laurey2}));
  }
  detail::write_lines(path, kComplexHeader, rows);
}

/// x, Re q, Im q, |q| per node.
inline void emit_q_field(const std::string& path, const ComplexField& q) {
  std::vector<std::string> rows;
  for (int j = 0; j < q.size(); ++j) {
    const Complex v = q.values[j];
    rows.push_back(detail::csv_row({node(j, q.size()), v.real(), v.imag(), std::abs(v)}));
  }
  detail::write_lines(path, "x,re_q,im_q,abs_q", rows);
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  CsvTable t;
  std::string line;
  if (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace dispflow::harness

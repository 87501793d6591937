#pragma once

// CSV emission with a fixed numeric formatting contract: decimal point,
// scientific notation for |x| < 1e-3 or >= 1e6, 15 significant digits so an
// emitted file parses back to better than 1e-12 relative.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rfchain::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void validate() const {
    if (header.empty()) throw std::invalid_argument("Table: header required");
    for (const auto& r : rows) {
      if (r.size() != header.size()) throw std::invalid_argument("Table: ragged row");
    }
  }
};

inline std::string format_number(double x) {
  if (x == 0.0) return "0";
  std::string sign;
  double a = x;
  if (a < 0.0) {
    sign = "-";
    a = -a;
  }
  char buf[48];
  if (a < 1e-3 || a >= 1e6) {
    std::snprintf(buf, sizeof(buf), "%.14e", a);
    std::string s(buf);
    const auto epos = s.find('e');
    std::string mant = s.substr(0, epos);
    std::string exp = s.substr(epos + 1);
    // trim mantissa
    while (!mant.empty() && mant.back() == '0') mant.pop_back();
    if (!mant.empty() && mant.back() == '.') mant.pop_back();
    // normalize exponent: drop '+' and leading zeros
    bool neg_exp = false;
    std::size_t i = 0;
    if (exp[i] == '+' || exp[i] == '-') {
      neg_exp = exp[i] == '-';
      ++i;
    }
    while (i + 1 < exp.size() && exp[i] == '0') ++i;
    return sign + mant + "e" + (neg_exp ? "-" : "") + exp.substr(i);
  }
  std::snprintf(buf, sizeof(buf), "%.15g", a);
  return sign + buf;
}

inline void write_csv(const Table& t, std::ostream& os) {
  t.validate();
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) os << ',';
    os << t.header[i];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_number(row[i]);
    }
    os << '\n';
  }
}

inline void emit_csv(const Table& t, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("emit_csv: cannot open " + path);
  write_csv(t, os);
  os.flush();
  if (!os) throw std::runtime_error("emit_csv: write failed for " + path);
}

inline Table parse_csv(std::istream& is) {
  Table t;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ls(line);
    std::string cell;
    if (first) {
      while (std::getline(ls, cell, ',')) t.header.push_back(cell);
      first = false;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    t.rows.push_back(std::move(row));
  }
  t.validate();
  return t;
}

inline Table parse_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("parse_csv: cannot open " + path);
  return parse_csv(is);
}

}  // namespace rfchain::csv

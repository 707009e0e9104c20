#pragma once

// Report records. CSV is the default; the "full" format is a JSON dump of the
// same records. Every float is printed with 17 significant digits.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "symarea/cli/scene.hpp"
#include "symarea/random.hpp"
#include "symarea/version.hpp"

namespace symarea::cli {

struct Record {
  std::string task;
  std::string inputs;
  std::string classification;
  std::optional<double> value;
  std::optional<double> oracle;
  std::optional<double> residual;
  std::optional<Complex> psi;
  std::string note;
};

struct Report {
  std::uint64_t seed = 0;
  std::vector<Record> records;
};

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

}  // namespace detail

inline void write_csv(std::ostream& out, const Report& report) {
  out << "version,rng,seed,task,inputs,classification,value,oracle,residual,psi_re,psi_im,note\n";
  for (const Record& r : report.records) {
    out << kVersion << ',' << kRngAlgorithm << ',' << report.seed << ',' << detail::csv_field(r.task) << ','
        << detail::csv_field(r.inputs) << ',' << detail::csv_field(r.classification) << ','
        << detail::opt(r.value) << ',' << detail::opt(r.oracle) << ',' << detail::opt(r.residual) << ','
        << (r.psi ? format_double(r.psi->real()) : "") << ','
        << (r.psi ? format_double(r.psi->imag()) : "") << ',' << detail::csv_field(r.note) << '\n';
  }
}

inline void write_full(std::ostream& out, const Report& report) {
  json doc;
  doc["version"] = kVersion;
  doc["rng"] = kRngAlgorithm;
  doc["seed"] = report.seed;
  doc["records"] = json::array();
  for (const Record& r : report.records) {
    json j;
    j["version"] = kVersion;
    j["seed"] = report.seed;
    j["task"] = r.task;
    j["inputs"] = r.inputs;
    j["classification"] = r.classification;
    if (r.value) j["value"] = *r.value;
    if (r.oracle) j["oracle"] = *r.oracle;
    if (r.residual) j["residual"] = *r.residual;
    if (r.psi) j["psi"] = {r.psi->real(), r.psi->imag()};
    if (!r.note.empty()) j["note"] = r.note;
    doc["records"].push_back(j);
  }
  out << doc.dump(2) << '\n';
}

}  // namespace symarea::cli

#include "tlab/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tlab/sl3.hpp"

namespace tlab {

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string rows_to_csv(const std::vector<ExperimentRow>& rows, bool timings) {
  std::ostringstream os;
  os << "m,p,d,quantity,lower,upper,certified,method,iterations,residual,seconds\n";
  for (const auto& r : rows) {
    os << r.m << ',' << csv_double(r.p) << ',' << r.d << ','
       << csv_field(r.quantity) << ',' << csv_double(r.lower) << ','
       << csv_double(r.upper) << ',' << (r.certified ? 1 : 0) << ','
       << csv_field(r.method) << ',' << r.iterations << ','
       << csv_double(r.residual) << ',';
    if (timings) os << csv_double(r.seconds);
    os << '\n';
  }
  return os.str();
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw ValidationError("atomic_write: cannot open " + tmp.string());
    os << content;
    if (!os) throw ValidationError("atomic_write: write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace tlab

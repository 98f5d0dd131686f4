#include "l1sec/report.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "l1sec/errors.hpp"

namespace l1sec {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Report& Report::add(const std::string& key, const std::string& value) {
  if (key.empty() || key.find_first_of("=\n") != std::string::npos)
    throw std::invalid_argument("bad report key '" + key + "'");
  std::string v = value;
  for (auto& ch : v)
    if (ch == '\n' || ch == '\r') ch = ' ';
  kv_.emplace_back(key, std::move(v));
  return *this;
}

Report& Report::add(const std::string& key, const char* value) {
  return add(key, std::string(value));
}
Report& Report::add(const std::string& key, double value) {
  return add(key, format_double(value));
}
Report& Report::add(const std::string& key, std::uint64_t value) {
  return add(key, std::to_string(value));
}
Report& Report::add(const std::string& key, std::int64_t value) {
  return add(key, std::to_string(value));
}
Report& Report::add(const std::string& key, bool value) {
  return add(key, std::string(value ? "true" : "false"));
}

const std::string& Report::at(const std::string& key) const {
  for (const auto& [k, v] : kv_)
    if (k == key) return v;
  throw std::out_of_range("report has no key '" + key + "'");
}

bool Report::contains(const std::string& key) const {
  for (const auto& kv : kv_)
    if (kv.first == key) return true;
  return false;
}

void Report::write(std::ostream& out) const {
  for (const auto& [k, v] : kv_) out << k << '=' << v << '\n';
}

std::string Report::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

Report Report::parse(std::istream& in) {
  Report r;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ParseError(no, "expected key=value, got '" + line + "'");
    r.add(line.substr(0, eq), line.substr(eq + 1));
  }
  return r;
}

}  // namespace l1sec

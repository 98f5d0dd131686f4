#pragma once

// Flat key=value reports, one pair per line, keys in insertion order.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace l1sec {

class Report {
 public:
  Report& add(const std::string& key, const std::string& value);
  Report& add(const std::string& key, const char* value);
  Report& add(const std::string& key, double value);
  Report& add(const std::string& key, std::uint64_t value);
  Report& add(const std::string& key, std::int64_t value);
  Report& add(const std::string& key, int value) {
    return add(key, static_cast<std::int64_t>(value));
  }
  Report& add(const std::string& key, std::uint32_t value) {
    return add(key, static_cast<std::uint64_t>(value));
  }
  Report& add(const std::string& key, bool value);

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return kv_;
  }
  // Value of the first entry with `key`; throws std::out_of_range if absent.
  const std::string& at(const std::string& key) const;
  bool contains(const std::string& key) const;

  void write(std::ostream& out) const;
  std::string str() const;
  static Report parse(std::istream& in);

 private:
  std::vector<std::pair<std::string, std::string>> kv_;
};

// Shortest decimal form that round-trips the double.
std::string format_double(double v);

}  // namespace l1sec

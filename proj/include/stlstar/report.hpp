// Flat key=value run reports for the CLI and the benchmark driver.

#ifndef STLSTAR_REPORT_HPP
#define STLSTAR_REPORT_HPP

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace stlstar {

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

class RunReport {
public:
  void add(const std::string& key, const std::string& value) {
    lines_.push_back(key + "=" + value);
  }
  void add(const std::string& key, double value) {
    std::ostringstream os;
    os.precision(12);
    os << value;
    add(key, os.str());
  }
  void add(const std::string& key, long long value) {
    add(key, std::to_string(value));
  }
  void add(const std::string& key, int value) { add(key, std::to_string(value)); }
  void add(const std::string& key, bool value) {
    add(key, std::string(value ? "true" : "false"));
  }
  void add_hash(const std::string& key, const std::string& payload) {
    std::ostringstream os;
    os << std::hex << fnv1a64(payload);
    add(key, os.str());
  }

  std::string str() const {
    std::string out;
    for (const auto& l : lines_) {
      out += l;
      out += '\n';
    }
    return out;
  }

private:
  std::vector<std::string> lines_;
};

}  // namespace stlstar

#endif  // STLSTAR_REPORT_HPP

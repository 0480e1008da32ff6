// Finite sampled traces: strictly increasing timestamps, one double per
// signal dimension per sample. CSV layout: header "time,s1,...,sD", one
// sample per row, LF or CRLF endings.

#ifndef STLSTAR_TRACE_HPP
#define STLSTAR_TRACE_HPP

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stlstar {

class Trace {
public:
  Trace() = default;
  Trace(std::vector<double> times, std::vector<double> values, int dim)
      : times_(std::move(times)), values_(std::move(values)), dim_(dim) {
    if (dim_ < 1) throw std::runtime_error("trace needs at least one dimension");
    if (values_.size() != times_.size() * static_cast<std::size_t>(dim_))
      throw std::runtime_error("trace value count does not match times x dim");
    for (std::size_t i = 1; i < times_.size(); ++i)
      if (!(times_[i] > times_[i - 1]))
        throw std::runtime_error("timestamps must be strictly increasing");
    detect_uniform();
  }

  int size() const { return static_cast<int>(times_.size()); }
  int dim() const { return dim_; }
  bool empty() const { return times_.empty(); }
  double time(int i) const { return times_[static_cast<std::size_t>(i)]; }
  double end_time() const { return times_.back(); }
  const std::vector<double>& times() const { return times_; }

  // Pointer to the dim values of sample i.
  const double* sample(int i) const {
    return values_.data() + static_cast<std::size_t>(i) * dim_;
  }
  double value(int i, int dim1based) const {
    return values_[static_cast<std::size_t>(i) * dim_ + (dim1based - 1)];
  }

  bool uniform() const { return uniform_; }
  double step() const { return step_; }

  // First index i with time(i) >= t, or size() if none.
  int first_at_or_after(double t) const {
    int n = size();
    if (n == 0 || t <= times_.front()) return t <= times_.front() ? 0 : n;
    if (t > times_.back()) return n;
    if (uniform_) {
      double idx = (t - times_.front()) / step_;
      int i = static_cast<int>(std::ceil(idx - 1e-9));
      if (i < 0) i = 0;
      while (i > 0 && times_[static_cast<std::size_t>(i - 1)] >= t) --i;
      while (i < n && times_[static_cast<std::size_t>(i)] < t) ++i;
      return i;
    }
    int lo = 0, hi = n - 1;  // invariant: answer in (lo, hi] once times[lo] < t
    while (lo < hi) {
      int mid = lo + (hi - lo) / 2;
      if (times_[static_cast<std::size_t>(mid)] >= t) hi = mid;
      else lo = mid + 1;
    }
    return lo;
  }

  // Last index i with time(i) <= t, or -1 if none.
  int last_at_or_before(double t) const {
    int i = first_at_or_after(t);
    if (i < size() && times_[static_cast<std::size_t>(i)] == t) return i;
    return i - 1;
  }

private:
  void detect_uniform() {
    uniform_ = true;
    step_ = 0.0;
    if (times_.size() < 2) return;
    step_ = (times_.back() - times_.front()) / static_cast<double>(times_.size() - 1);
    for (std::size_t i = 1; i < times_.size(); ++i) {
      double expect = times_.front() + step_ * static_cast<double>(i);
      double d = std::fabs(times_[i] - expect);
      if (d > 1e-9 * std::max(1.0, std::fabs(expect))) {
        uniform_ = false;
        return;
      }
    }
  }

  std::vector<double> times_;
  std::vector<double> values_;  // row major, dim_ per sample
  int dim_ = 1;
  bool uniform_ = true;
  double step_ = 0.0;
};

inline Trace load_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trace file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  if (header.empty() || header[0] != "time")
    throw std::runtime_error("trace header must start with 'time'");
  int dim = static_cast<int>(header.size()) - 1;
  if (dim < 1) throw std::runtime_error("trace header must list s1,...,sD");
  for (int k = 1; k <= dim; ++k)
    if (header[static_cast<std::size_t>(k)] != "s" + std::to_string(k))
      throw std::runtime_error("trace header column " + std::to_string(k) +
                               " must be s" + std::to_string(k));

  std::vector<double> times, values;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    int col = 0;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str())
        throw std::runtime_error("bad number at line " + std::to_string(lineno));
      if (col == 0) times.push_back(v);
      else values.push_back(v);
      ++col;
    }
    if (col != dim + 1)
      throw std::runtime_error("wrong column count at line " + std::to_string(lineno));
  }
  return Trace(std::move(times), std::move(values), dim);
}

inline Trace load_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  return load_csv(in);
}

inline void save_csv(const Trace& tr, std::ostream& out) {
  out << "time";
  for (int k = 1; k <= tr.dim(); ++k) out << ",s" << k;
  out << "\n";
  out.precision(17);
  for (int i = 0; i < tr.size(); ++i) {
    out << tr.time(i);
    for (int k = 1; k <= tr.dim(); ++k) out << "," << tr.value(i, k);
    out << "\n";
  }
}

inline void save_csv_file(const Trace& tr, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  save_csv(tr, out);
}

}  // namespace stlstar

#endif  // STLSTAR_TRACE_HPP

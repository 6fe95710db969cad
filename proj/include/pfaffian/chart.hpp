#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace pfaffian {

struct ChartError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ordered list of distinct coordinate names. Names may not be "pi"
// (reserved constant) and may not equal "d" + another coordinate,
// which would make the form grammar ambiguous.
class Chart {
 public:
  explicit Chart(std::vector<std::string> names);

  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int i) const { return names_.at(i); }

  int index_of(const std::string& n) const;  // -1 when absent
  bool has(const std::string& n) const { return index_of(n) >= 0; }

  bool operator==(const Chart& o) const { return names_ == o.names_; }
  bool operator!=(const Chart& o) const { return !(*this == o); }

 private:
  std::vector<std::string> names_;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::vector<std::string> names);

}  // namespace pfaffian

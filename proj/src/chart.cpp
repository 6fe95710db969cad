#include "pfaffian/chart.hpp"

#include <set>

namespace pfaffian {

Chart::Chart(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw ChartError("chart needs at least one coordinate");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw ChartError("empty coordinate name");
    if (n == "pi") throw ChartError("'pi' is a reserved constant");
    if (!seen.insert(n).second)
      throw ChartError("duplicate coordinate name '" + n + "'");
  }
  for (const auto& n : names_) {
    if (n.size() > 1 && n[0] == 'd' && seen.count(n.substr(1)))
      throw ChartError("coordinate '" + n +
                       "' shadows the differential of '" + n.substr(1) + "'");
  }
}

int Chart::index_of(const std::string& n) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == n) return static_cast<int>(i);
  return -1;
}

ChartPtr make_chart(std::vector<std::string> names) {
  return std::make_shared<const Chart>(std::move(names));
}

}  // namespace pfaffian

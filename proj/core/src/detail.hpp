#pragma once

#include <set>
#include <string>

namespace rana::detail {

// Hands out orbit names, suffixing on collision.
class NamePool {
 public:
  std::string take(std::string base) {
    std::string s = base;
    for (int i = 2; used_.count(s); ++i) s = base + "_" + std::to_string(i);
    used_.insert(s);
    return s;
  }

 private:
  std::set<std::string> used_;
};

}  // namespace rana::detail

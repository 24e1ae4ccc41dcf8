#pragma once

#include <chrono>
#include <string>

#include "matrex/error.hpp"

namespace matrex::detail {

class Deadline {
 public:
  explicit Deadline(double seconds)
      : enabled_(seconds > 0),
        end_(std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(seconds > 0 ? seconds : 0))) {}

  void check(const char* what) const {
    if (enabled_ && std::chrono::steady_clock::now() > end_)
      throw ResourceLimit(std::string(what) + " exceeded the time limit");
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point end_;
};

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace matrex::detail

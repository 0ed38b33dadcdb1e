// Copyright 2026 The SUAEx-cpp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small text helpers shared by the TSV readers and writers.

#ifndef SUAEX_SRC_FORMAT_UTIL_HPP_
#define SUAEX_SRC_FORMAT_UTIL_HPP_

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace suaex {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    std::size_t end = s.find(sep, begin);
    if (end == std::string_view::npos) {
      parts.push_back(s.substr(begin));
      return parts;
    }
    parts.push_back(s.substr(begin, end - begin));
    begin = end + 1;
  }
}

inline bool parse_double(std::string_view s, double& value) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Six decimals; negative zero prints as 0.000000.
inline std::string format_fixed6(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  int n = std::snprintf(buf, sizeof(buf), "%.6f", v);
  std::string s(buf, n);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

}  // namespace suaex

#endif  // SUAEX_SRC_FORMAT_UTIL_HPP_

/*
 Copyright 2026 The tugsim Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace tugsim {

/// Shortest decimal string that parses back to exactly x; locale-independent.
inline void append_double(std::string& out, double x) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) {
    out += "nan";
    return;
  }
  out.append(buf, end);
}

inline std::string format_double(double x) {
  std::string s;
  append_double(s, x);
  return s;
}

}  // namespace tugsim

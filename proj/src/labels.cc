// Copyright 2026 The offlang Authors.
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

#include "offlang/labels.h"

#include "offlang/errors.h"

namespace offlang {

bool HierLabel::valid() const {
  if (b.has_value() != (a == LabelA::kOff)) return false;
  if (c.has_value() != (b == LabelB::kTin)) return false;
  return true;
}

HierLabel HierLabel::make(LabelA a, std::optional<LabelB> b,
                          std::optional<LabelC> c) {
  HierLabel label{a, b, c};
  if (!label.valid()) {
    throw ValidationError("invalid label combination: a=" +
                          std::string(to_string(a)) +
                          " b=" + (b ? std::string(to_string(*b)) : "NULL") +
                          " c=" + (c ? std::string(to_string(*c)) : "NULL"));
  }
  return label;
}

std::string HierLabel::pattern() const {
  std::string out(to_string(a));
  if (b) out += "-" + std::string(to_string(*b));
  if (c) out += "-" + std::string(to_string(*c));
  return out;
}

std::string_view to_string(LabelA a) { return a == LabelA::kNot ? "NOT" : "OFF"; }

std::string_view to_string(LabelB b) { return b == LabelB::kTin ? "TIN" : "UNT"; }

std::string_view to_string(LabelC c) {
  switch (c) {
    case LabelC::kInd: return "IND";
    case LabelC::kGrp: return "GRP";
    case LabelC::kOth: return "OTH";
  }
  return "?";
}

std::string_view to_string(Task t) {
  switch (t) {
    case Task::kA: return "A";
    case Task::kB: return "B";
    case Task::kC: return "C";
  }
  return "?";
}

std::optional<LabelA> parse_label_a(std::string_view s) {
  if (s == "NOT") return LabelA::kNot;
  if (s == "OFF") return LabelA::kOff;
  return std::nullopt;
}

std::optional<LabelB> parse_label_b(std::string_view s) {
  if (s == "TIN") return LabelB::kTin;
  if (s == "UNT") return LabelB::kUnt;
  return std::nullopt;
}

std::optional<LabelC> parse_label_c(std::string_view s) {
  if (s == "IND") return LabelC::kInd;
  if (s == "GRP") return LabelC::kGrp;
  if (s == "OTH") return LabelC::kOth;
  return std::nullopt;
}

std::optional<Task> parse_task(std::string_view s) {
  if (s == "A" || s == "a") return Task::kA;
  if (s == "B" || s == "b") return Task::kB;
  if (s == "C" || s == "c") return Task::kC;
  return std::nullopt;
}

std::optional<HierLabel> parse_pattern(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t dash = s.find('-', start);
    parts.push_back(s.substr(start, dash == std::string_view::npos ? dash : dash - start));
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
  if (parts.size() > 3) return std::nullopt;
  HierLabel label;
  const auto a = parse_label_a(parts[0]);
  if (!a) return std::nullopt;
  label.a = *a;
  if (parts.size() > 1) {
    label.b = parse_label_b(parts[1]);
    if (!label.b) return std::nullopt;
  }
  if (parts.size() > 2) {
    label.c = parse_label_c(parts[2]);
    if (!label.c) return std::nullopt;
  }
  if (!label.valid()) return std::nullopt;
  return label;
}

const std::vector<std::string> &task_classes(Task t) {
  static const std::vector<std::string> a{"NOT", "OFF"};
  static const std::vector<std::string> b{"TIN", "UNT"};
  static const std::vector<std::string> c{"IND", "GRP", "OTH"};
  switch (t) {
    case Task::kA: return a;
    case Task::kB: return b;
    case Task::kC: return c;
  }
  return a;
}

std::optional<int> task_class(const HierLabel &label, Task t) {
  switch (t) {
    case Task::kA:
      return static_cast<int>(label.a);
    case Task::kB:
      if (!label.b) return std::nullopt;
      return static_cast<int>(*label.b);
    case Task::kC:
      if (!label.c) return std::nullopt;
      return static_cast<int>(*label.c);
  }
  return std::nullopt;
}

}  // namespace offlang

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

#ifndef OFFLANG_LABELS_H_
#define OFFLANG_LABELS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace offlang {

// Sub-task A: offensive or not.
enum class LabelA { kNot, kOff };
// Sub-task B: targeted insult or untargeted profanity.
enum class LabelB { kTin, kUnt };
// Sub-task C: target type. Declaration order is the tie-break order.
enum class LabelC { kInd, kGrp, kOth };

enum class Task { kA, kB, kC };

// Three-level label. b is present iff a == OFF, c is present iff b == TIN.
struct HierLabel {
  LabelA a = LabelA::kNot;
  std::optional<LabelB> b;
  std::optional<LabelC> c;

  bool valid() const;

  // Throws ValidationError when the combination is structurally invalid.
  static HierLabel make(LabelA a, std::optional<LabelB> b = std::nullopt,
                        std::optional<LabelC> c = std::nullopt);

  static HierLabel not_offensive() { return {}; }
  static HierLabel untargeted() { return make(LabelA::kOff, LabelB::kUnt); }
  static HierLabel targeted(LabelC target) {
    return make(LabelA::kOff, LabelB::kTin, target);
  }

  // "NOT", "OFF-UNT", "OFF-TIN-IND", ...
  std::string pattern() const;

  friend bool operator==(const HierLabel &, const HierLabel &) = default;
};

std::string_view to_string(LabelA a);
std::string_view to_string(LabelB b);
std::string_view to_string(LabelC c);
std::string_view to_string(Task t);

// Parsers accept the upper-case codes; nullopt for anything else.
std::optional<LabelA> parse_label_a(std::string_view s);
std::optional<LabelB> parse_label_b(std::string_view s);
std::optional<LabelC> parse_label_c(std::string_view s);
std::optional<Task> parse_task(std::string_view s);

// Inverse of HierLabel::pattern(); nullopt for malformed or invalid input.
std::optional<HierLabel> parse_pattern(std::string_view s);

// Ordered class codes of a task: A {NOT, OFF}, B {TIN, UNT}, C {IND, GRP, OTH}.
const std::vector<std::string> &task_classes(Task t);

// Class index of a label within a task, or nullopt when the task does not
// apply to the label (B on a NOT post, C on an UNT post).
std::optional<int> task_class(const HierLabel &label, Task t);

}  // namespace offlang

#endif  // OFFLANG_LABELS_H_

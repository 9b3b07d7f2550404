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

#include <gtest/gtest.h>

#include "offlang/errors.h"

namespace offlang {
namespace {

TEST(HierLabelTest, ValidCombinations) {
  EXPECT_TRUE(HierLabel::not_offensive().valid());
  EXPECT_TRUE(HierLabel::untargeted().valid());
  EXPECT_TRUE(HierLabel::targeted(LabelC::kInd).valid());
  EXPECT_TRUE(HierLabel::targeted(LabelC::kGrp).valid());
  EXPECT_TRUE(HierLabel::targeted(LabelC::kOth).valid());
}

TEST(HierLabelTest, RejectsStructurallyInvalidLabels) {
  EXPECT_THROW(HierLabel::make(LabelA::kNot, LabelB::kTin), ValidationError);
  EXPECT_THROW(HierLabel::make(LabelA::kOff), ValidationError);
  EXPECT_THROW(HierLabel::make(LabelA::kOff, LabelB::kUnt, LabelC::kInd),
               ValidationError);
  EXPECT_THROW(HierLabel::make(LabelA::kOff, LabelB::kTin), ValidationError);
  EXPECT_THROW(HierLabel::make(LabelA::kNot, std::nullopt, LabelC::kGrp),
               ValidationError);
  HierLabel raw;
  raw.b = LabelB::kTin;
  EXPECT_FALSE(raw.valid());
}

TEST(HierLabelTest, PatternsRoundTrip) {
  const HierLabel all[] = {HierLabel::not_offensive(), HierLabel::untargeted(),
                           HierLabel::targeted(LabelC::kInd),
                           HierLabel::targeted(LabelC::kGrp),
                           HierLabel::targeted(LabelC::kOth)};
  const char *patterns[] = {"NOT", "OFF-UNT", "OFF-TIN-IND", "OFF-TIN-GRP",
                            "OFF-TIN-OTH"};
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(all[i].pattern(), patterns[i]);
    ASSERT_TRUE(parse_pattern(patterns[i]).has_value());
    EXPECT_EQ(*parse_pattern(patterns[i]), all[i]);
  }
  EXPECT_FALSE(parse_pattern("NOT-TIN").has_value());
  EXPECT_FALSE(parse_pattern("OFF").has_value());
  EXPECT_FALSE(parse_pattern("").has_value());
  EXPECT_FALSE(parse_pattern("OFF-TIN-IND-X").has_value());
}

TEST(LabelParsingTest, CodesAreUpperCase) {
  EXPECT_EQ(parse_label_a("OFF"), LabelA::kOff);
  EXPECT_EQ(parse_label_b("UNT"), LabelB::kUnt);
  EXPECT_EQ(parse_label_c("OTH"), LabelC::kOth);
  EXPECT_EQ(parse_task("C"), Task::kC);
  EXPECT_FALSE(parse_label_a("off").has_value());
  EXPECT_FALSE(parse_task("D").has_value());
}

TEST(TaskClassTest, ClassOrderIsTheTieOrder) {
  EXPECT_EQ(task_classes(Task::kA), (std::vector<std::string>{"NOT", "OFF"}));
  EXPECT_EQ(task_classes(Task::kB), (std::vector<std::string>{"TIN", "UNT"}));
  EXPECT_EQ(task_classes(Task::kC), (std::vector<std::string>{"IND", "GRP", "OTH"}));
}

TEST(TaskClassTest, ApplicabilityFollowsHierarchy) {
  EXPECT_EQ(task_class(HierLabel::not_offensive(), Task::kA), 0);
  EXPECT_FALSE(task_class(HierLabel::not_offensive(), Task::kB).has_value());
  EXPECT_EQ(task_class(HierLabel::untargeted(), Task::kB), 1);
  EXPECT_FALSE(task_class(HierLabel::untargeted(), Task::kC).has_value());
  EXPECT_EQ(task_class(HierLabel::targeted(LabelC::kOth), Task::kC), 2);
  EXPECT_EQ(task_class(HierLabel::targeted(LabelC::kOth), Task::kB), 0);
  EXPECT_EQ(task_class(HierLabel::targeted(LabelC::kOth), Task::kA), 1);
}

}  // namespace
}  // namespace offlang

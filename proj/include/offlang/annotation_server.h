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

#ifndef OFFLANG_ANNOTATION_SERVER_H_
#define OFFLANG_ANNOTATION_SERVER_H_

#include <memory>
#include <string>
#include <thread>

#include "offlang/annotation.h"

namespace offlang {

// HTTP front end for an AnnotationService.
class AnnotationServer {
 public:
  explicit AnnotationServer(const AnnotationService &service);
  ~AnnotationServer();

  AnnotationServer(const AnnotationServer &) = delete;
  AnnotationServer &operator=(const AnnotationServer &) = delete;

  // Binds and serves on a background thread; port 0 picks a free port.
  // Returns the bound port.
  int start(const std::string &host, int port);
  // Binds and serves on the calling thread until stop() is called.
  void serve(const std::string &host, int port);
  void stop();
  int port() const { return port_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace offlang

#endif  // OFFLANG_ANNOTATION_SERVER_H_

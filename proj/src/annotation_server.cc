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

#include "offlang/annotation_server.h"

#include <map>

#include "httplib.h"
#include "offlang/errors.h"

namespace offlang {

struct AnnotationServer::Impl {
  httplib::Server server;
};

AnnotationServer::AnnotationServer(const AnnotationService &service)
    : impl_(std::make_unique<Impl>()) {
  const auto handler = [&service](const httplib::Request &req,
                                  httplib::Response &res) {
    std::map<std::string, std::string> query;
    for (const auto &[k, v] : req.params) query.emplace(k, v);
    const ServiceResponse out = service.handle(req.method, req.path, query, req.body);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  const std::string pattern = R"(/session/.*)";
  impl_->server.Get(pattern, handler);
  impl_->server.Post(pattern, handler);
}

AnnotationServer::~AnnotationServer() { stop(); }

int AnnotationServer::start(const std::string &host, int port) {
  port_ = port == 0 ? impl_->server.bind_to_any_port(host)
                    : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (port_ <= 0) {
    throw Error(Error::Category::kRuntime,
                "cannot bind " + host + ":" + std::to_string(port));
  }
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port_;
}

void AnnotationServer::serve(const std::string &host, int port) {
  port_ = port;
  if (!impl_->server.listen(host, port)) {
    throw Error(Error::Category::kRuntime,
                "cannot listen on " + host + ":" + std::to_string(port));
  }
}

void AnnotationServer::stop() {
  if (impl_) impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace offlang

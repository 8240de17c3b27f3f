/*
 * Copyright 2026 The Pyro Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef PYRO_SERVICE_H_
#define PYRO_SERVICE_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pyro/bundle.h"

namespace pyro {

struct ServiceConfig {
  size_t max_batch = 10000;
  std::string host = "127.0.0.1";
  int port = 8080;
};

struct HttpResponse {
  int status = 200;
  std::string body;
};

// Parses a JSON record. Keys are the feature names (W, r, L, fc, fy, K, C,
// ex, ey, P, E, S) or the CSV column names. Type problems become error
// violations; `present` receives the features given explicitly.
ColumnRecord RecordFromJson(const nlohmann::json& j, std::vector<Violation>& violations,
                            std::vector<Feature>* present = nullptr);
nlohmann::json RecordToJson(const ColumnRecord& rec);

// Request routing without sockets. Holds one immutable model per task; safe
// to call from many threads at once.
class Service {
 public:
  Service(std::vector<ModelBundle> bundles, ServiceConfig config = {});

  HttpResponse Handle(std::string_view method, std::string_view path,
                      std::string_view body) const;

  const ServiceConfig& config() const { return config_; }

 private:
  HttpResponse Predict(const nlohmann::json& request) const;
  HttpResponse Explain(const nlohmann::json& request) const;
  HttpResponse Codal(const nlohmann::json& request) const;
  HttpResponse Schema() const;
  HttpResponse Model() const;
  nlohmann::json Fingerprints() const;

  std::map<Task, ModelBundle> models_;
  ServiceConfig config_;
};

// Blocks serving `service` over HTTP until the process is stopped.
void RunServer(const Service& service);

}  // namespace pyro

#endif  // PYRO_SERVICE_H_

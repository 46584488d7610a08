// Copyright 2026 The Treegraph Authors.
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


// HTTP edit service. The request handler is transport independent so it
// can be tested without sockets; serve() binds it to a cpp-httplib server.
//
//   GET  /documents
//   GET  /documents/{id}/tree?layer=constituency|dependency|propbank
//   POST /documents/{id}/op    {"revision", "op", "selector", "params"}
//   POST /documents/{id}/undo  {"revision"}   (revision optional)
//
// Mutations run on a copy of the document and commit atomically. A stale
// revision is 409, a failed operation 422; neither changes the document.

#ifndef TREEGRAPH_SERVICE_H_
#define TREEGRAPH_SERVICE_H_

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "treegraph/formats.h"

namespace httplib {
class Server;
}

namespace treegraph::service {

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;  // JSON
};

class Document {
 public:
  explicit Document(formats::Sentence initial);

  // Current state as native JSON, and the revision it belongs to.
  std::pair<std::string, std::uint64_t> snapshot() const;

  // Re-applies the op log to the initial sentence.
  formats::Sentence replay() const;

 private:
  friend class Store;

  mutable std::shared_mutex mutex_;
  formats::Sentence initial_;
  formats::Sentence current_;
  std::uint64_t revision_ = 0;
  std::vector<formats::Sentence> undo_;
  std::vector<std::string> log_;  // request bodies, or "undo"
};

class Store {
 public:
  // Documents are named "1", "2", ... in corpus order.
  explicit Store(formats::Corpus corpus);

  Response handle(const Request& request);

  Document* find(const std::string& id);
  std::vector<std::string> ids() const { return order_; }

 private:
  Response list();
  Response tree(Document& d, const std::string& id, const std::string& layer);
  Response op(Document& d, const std::string& id, const std::string& body);
  Response undo(Document& d, const std::string& id, const std::string& body);

  std::map<std::string, std::unique_ptr<Document>> documents_;
  std::vector<std::string> order_;
};

// Applies one op request body to s (no revision check). Shared by the
// handler and log replay.
std::optional<ArcId> apply_op(formats::Sentence& s, const std::string& body);

// JSON rendering of one layer of a sentence.
std::string render_layer(const formats::Sentence& s, const std::string& layer);

// The handler bound to a cpp-httplib server, with permissive CORS headers.
class Server {
 public:
  explicit Server(Store& store);
  ~Server();

  // Port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  void run();   // blocks until stop()
  void stop();  // callable from any thread

 private:
  std::unique_ptr<httplib::Server> http_;
};

// Blocks serving on host:port until the process is stopped.
void serve(Store& store, const std::string& host, int port);

}  // namespace treegraph::service

#endif  // TREEGRAPH_SERVICE_H_

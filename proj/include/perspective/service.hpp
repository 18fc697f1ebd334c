#pragma once

// HTTP front end. Service::handle does all the work and can be driven
// without a socket; serve() binds it to cpp-httplib.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "perspective/corpus.hpp"
#include "perspective/discovery.hpp"
#include "perspective/framenet.hpp"
#include "perspective/records.hpp"
#include "perspective/syntax.hpp"

namespace perspective {

struct ServiceConfig {
  int max_steps = kDefaultMaxSteps;
  std::set<RelationType> relations = default_alternative_relations();
  int hops = 1;
  int top_n = 10;
};

struct Response {
  int status = 200;
  Json body;
};

using QueryParams = std::multimap<std::string, std::string>;

class Service {
 public:
  Service(std::shared_ptr<const FrameKB> kb, std::shared_ptr<const WordVectorStore> vectors,
          ServiceConfig config = {});

  // The corpus must be analyzed.
  void add_corpus(const std::string& id, CorpusHandle corpus);

  // Never throws; errors become {"error": {"code", "message"}} with 400,
  // 404 or 500.
  Response handle(std::string_view method, std::string_view path, const QueryParams& params,
                  std::string_view body) const;

 private:
  Response dispatch(std::string_view method, std::string_view path, const QueryParams& params,
                    const Json& body) const;
  const Corpus& corpus(const std::string& id) const;
  Json stats(const Corpus& corpus, std::string_view kind, const Json& request) const;
  Json analyze(const Json& request) const;

  std::shared_ptr<const FrameKB> kb_;
  std::shared_ptr<const WordVectorStore> vectors_;
  std::map<std::string, FrameEmbedding> embeddings_;
  ServiceConfig config_;
  std::map<std::string, CorpusHandle> corpora_;
};

// Socket front end over a Service.
class HttpFrontEnd {
 public:
  explicit HttpFrontEnd(const Service& service);
  ~HttpFrontEnd();
  HttpFrontEnd(const HttpFrontEnd&) = delete;
  HttpFrontEnd& operator=(const HttpFrontEnd&) = delete;
  // Port 0 picks a free port. Returns the bound port; throws Error(input)
  // when binding fails.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called from another thread. stop() waits for
  // run() to have started.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Blocks until the server stops. Throws Error(input) if the port cannot be bound.
void serve(const Service& service, const std::string& host, int port);

}  // namespace perspective

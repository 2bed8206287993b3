#pragma once

#include <string>

namespace storycmp::http {

struct Response {
  int status = 0;
  std::string body;
};

// `endpoint` is "http://host:port" (scheme optional). Transport failures
// throw RemoteError naming the endpoint; HTTP error statuses are returned.
Response post_json(const std::string& endpoint, const std::string& path,
                   const std::string& body, int timeout_seconds = 60);
Response get(const std::string& endpoint, const std::string& path,
             int timeout_seconds = 10);

}  // namespace storycmp::http

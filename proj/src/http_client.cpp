#include "http_client.hpp"

#include "httplib.h"
#include "storycmp/error.hpp"

namespace storycmp::http {

namespace {

httplib::Client make_client(const std::string& endpoint, int timeout_seconds) {
  httplib::Client client(endpoint);
  client.set_connection_timeout(timeout_seconds, 0);
  client.set_read_timeout(timeout_seconds, 0);
  client.set_write_timeout(timeout_seconds, 0);
  return client;
}

Response unwrap(const httplib::Result& res, const std::string& endpoint,
                const std::string& path) {
  if (!res)
    throw RemoteError("request to " + endpoint + path + " failed: " +
                      httplib::to_string(res.error()));
  return {res->status, res->body};
}

}  // namespace

Response post_json(const std::string& endpoint, const std::string& path,
                   const std::string& body, int timeout_seconds) {
  auto client = make_client(endpoint, timeout_seconds);
  return unwrap(client.Post(path, body, "application/json"), endpoint, path);
}

Response get(const std::string& endpoint, const std::string& path,
             int timeout_seconds) {
  auto client = make_client(endpoint, timeout_seconds);
  return unwrap(client.Get(path), endpoint, path);
}

}  // namespace storycmp::http

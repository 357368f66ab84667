#include <doctest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <functional>
#include <thread>

#include <json.hpp>

#include "crisislens/common/errors.hpp"
#include "crisislens/provider/client.hpp"
#include "crisislens/sentiment/sentiment.hpp"
#include "crisislens/topics/embedding.hpp"

using namespace crisislens;
using nlohmann::json;
using provider::ProviderClient;

namespace {

// Loopback line server answering each request through `handler`. A handler
// returning a null json closes the connection without replying; one
// returning a string sends it verbatim.
class FakeProvider {
 public:
  using Handler = std::function<json(const json&)>;

  explicit FakeProvider(Handler handler) : handler_(std::move(handler)) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    REQUIRE(::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0);
    socklen_t len = sizeof addr;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
    REQUIRE(::listen(listen_fd_, 4) == 0);
    thread_ = std::thread([this] { serve(); });
  }

  ~FakeProvider() {
    stop_ = true;
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    thread_.join();
  }

  std::uint16_t port() const { return port_; }
  int requests() const { return requests_; }

 private:
  void serve() {
    while (!stop_) {
      const int fd = ::accept(listen_fd_, nullptr, nullptr);
      if (fd < 0) return;
      std::string buf;
      char chunk[4096];
      bool open = true;
      while (open) {
        const auto got = ::recv(fd, chunk, sizeof chunk, 0);
        if (got <= 0) break;
        buf.append(chunk, static_cast<std::size_t>(got));
        std::size_t nl;
        while (open && (nl = buf.find('\n')) != std::string::npos) {
          const json req = json::parse(buf.substr(0, nl));
          buf.erase(0, nl + 1);
          ++requests_;
          const json reply = handler_(req);
          if (reply.is_null()) {
            open = false;
            break;
          }
          const std::string line = (reply.is_string() ? reply.get<std::string>() : reply.dump()) + "\n";
          ::send(fd, line.data(), line.size(), MSG_NOSIGNAL);
        }
      }
      ::close(fd);
    }
  }

  Handler handler_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stop_{false};
  std::atomic<int> requests_{0};
  std::thread thread_;
};

json ok(const json& req, json body) {
  body["id"] = req.at("id");
  body["ok"] = true;
  return body;
}

json hello(const json& req, std::size_t dim) {
  return ok(req, {{"dim", dim}, {"embed_model", "fake-embed"}, {"sentiment_model", "fake-sent"}});
}

}  // namespace

TEST_CASE("endpoint parsing") {
  CHECK(ProviderClient::parse_endpoint("127.0.0.1:7000") == std::pair<std::string, std::uint16_t>{"127.0.0.1", 7000});
  CHECK(ProviderClient::parse_endpoint("localhost:1") == std::pair<std::string, std::uint16_t>{"localhost", 1});
  CHECK_THROWS_AS(ProviderClient::parse_endpoint("localhost"), ConfigError);
  CHECK_THROWS_AS(ProviderClient::parse_endpoint(":80"), ConfigError);
  CHECK_THROWS_AS(ProviderClient::parse_endpoint("h:0"), ConfigError);
  CHECK_THROWS_AS(ProviderClient::parse_endpoint("h:70000"), ConfigError);
  CHECK_THROWS_AS(ProviderClient::parse_endpoint("h:8x"), ConfigError);
}

TEST_CASE("handshake") {
  FakeProvider server([](const json& req) { return hello(req, 4); });
  ProviderClient client("127.0.0.1", server.port());
  CHECK(client.info().dim == 4);
  CHECK(client.info().embed_model == "fake-embed");
  CHECK(client.info().sentiment_model == "fake-sent");
  CHECK(server.requests() == 1);  // cached
}

TEST_CASE("embedding vectors are re-normalised and stay in order across batches") {
  FakeProvider server([](const json& req) {
    if (req.at("op") == "hello") return hello(req, 2);
    json vectors = json::array();
    for (const auto& t : req.at("batch")) {
      const double n = static_cast<double>(t.get<std::string>().size());
      vectors.push_back({n, 1.0});
    }
    return ok(req, {{"vectors", vectors}});
  });
  ProviderClient client("127.0.0.1", server.port());
  std::vector<std::string> texts;
  for (std::size_t i = 0; i < 600; ++i) texts.push_back(std::string(i % 50, 'x'));
  const Matrix m = topics::embed_external(texts, client);
  REQUIRE(m.rows() == 600);
  for (std::size_t i = 0; i < 600; ++i) {
    const double n = static_cast<double>(i % 50);
    CHECK(m(i, 0) == doctest::Approx(n / std::sqrt(n * n + 1)));
  }
  // hello plus three batches of at most 256.
  CHECK(server.requests() == 4);
}

TEST_CASE("fixed unit vector is stored as-is") {
  FakeProvider server([](const json& req) {
    if (req.at("op") == "hello") return hello(req, 3);
    json vectors = json::array();
    for (std::size_t i = 0; i < req.at("batch").size(); ++i) vectors.push_back({1.0, 0.0, 0.0});
    return ok(req, {{"vectors", vectors}});
  });
  ProviderClient client("127.0.0.1", server.port());
  const std::vector<std::string> texts{"a", "b"};
  const Matrix m = topics::embed_external(texts, client);
  CHECK(m.row(1)[0] == 1.0);
  CHECK(m.row(1)[2] == 0.0);
  CHECK_THROWS_AS(topics::embed_external(texts, client, 5), DimensionMismatch);
}

TEST_CASE("wrong dimension from the provider") {
  FakeProvider server([](const json& req) {
    if (req.at("op") == "hello") return hello(req, 3);
    json vectors = json::array();
    for (std::size_t i = 0; i < req.at("batch").size(); ++i) vectors.push_back({1.0, 2.0});
    return ok(req, {{"vectors", vectors}});
  });
  ProviderClient client("127.0.0.1", server.port());
  const std::vector<std::string> texts{"a"};
  CHECK_THROWS_AS(topics::embed_external(texts, client), DimensionMismatch);
}

TEST_CASE("external sentiment is validated") {
  FakeProvider server([](const json& req) {
    if (req.at("op") == "hello") return hello(req, 3);
    json scores = json::array();
    for (const auto& t : req.at("batch")) {
      if (t == "bad") scores.push_back({-0.1, 0.6, 0.5});
      else scores.push_back({0.1, 0.7, 0.2});
    }
    return ok(req, {{"scores", scores}});
  });
  ProviderClient client("127.0.0.1", server.port());
  const std::vector<std::string> good{"fine", "also fine"};
  const auto labels = sentiment::classify_external(good, client);
  REQUIRE(labels.size() == 2);
  CHECK(labels[0].label == sentiment::Sentiment::neutral);
  CHECK(labels[1].scores[1] == doctest::Approx(0.7));
  const std::vector<std::string> bad{"fine", "bad"};
  CHECK_THROWS_AS(sentiment::classify_external(bad, client), InvalidScores);
}

TEST_CASE("per-item failures surface as provider errors") {
  FakeProvider server([](const json& req) {
    if (req.at("op") == "hello") return hello(req, 3);
    return ok(req, {{"scores", json::array({json::array({0.2, 0.6, 0.2}), nullptr})},
                    {"errors", {{"1", "text too long"}}}});
  });
  ProviderClient client("127.0.0.1", server.port());
  const std::vector<std::string> texts{"a", "b"};
  try {
    client.sentiment(texts);
    FAIL("expected ProviderError");
  } catch (const ProviderError& e) {
    CHECK(std::string(e.what()).find("text too long") != std::string::npos);
  }
}

TEST_CASE("protocol violations") {
  SUBCASE("error reply") {
    FakeProvider server([](const json& req) {
      return json{{"id", req.at("id")}, {"ok", false}, {"error", "unknown op"}};
    });
    ProviderClient client("127.0.0.1", server.port());
    CHECK_THROWS_AS(client.info(), ProviderError);
  }
  SUBCASE("reply for another request") {
    FakeProvider server([](const json&) { return json{{"id", 999}, {"ok", true}, {"dim", 3}}; });
    ProviderClient client("127.0.0.1", server.port());
    CHECK_THROWS_AS(client.info(), ProviderError);
  }
  SUBCASE("garbage line") {
    FakeProvider server([](const json&) { return json("not json at all"); });
    ProviderClient client("127.0.0.1", server.port());
    CHECK_THROWS_AS(client.info(), ProviderError);
  }
  SUBCASE("short batch") {
    FakeProvider server([](const json& req) {
      if (req.at("op") == "hello") return hello(req, 3);
      return ok(req, {{"scores", json::array()}});
    });
    ProviderClient client("127.0.0.1", server.port());
    const std::vector<std::string> texts{"a"};
    CHECK_THROWS_AS(client.sentiment(texts), ProviderError);
  }
}

TEST_CASE("unreachable or silent provider") {
  SUBCASE("nothing listening") {
    std::uint16_t port;
    { FakeProvider server([](const json&) { return json(); }); port = server.port(); }
    ProviderClient client("127.0.0.1", port);
    CHECK_THROWS_AS(client.info(), ProviderUnavailable);
  }
  SUBCASE("connection dropped") {
    FakeProvider server([](const json&) { return json(); });
    ProviderClient client("127.0.0.1", server.port());
    CHECK_THROWS_AS(client.info(), ProviderUnavailable);
  }
  SUBCASE("timeout") {
    FakeProvider server([](const json& req) {
      std::this_thread::sleep_for(std::chrono::milliseconds(600));
      return hello(req, 3);
    });
    ProviderClient client("127.0.0.1", server.port(), std::chrono::milliseconds(150));
    CHECK_THROWS_AS(client.info(), ProviderUnavailable);
  }
}

#include "crisislens/provider/client.hpp"

#include <netdb.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>

#include <fmt/format.h>

#include "crisislens/common/errors.hpp"

namespace crisislens::provider {

using nlohmann::json;

ProviderClient::ProviderClient(std::string host, std::uint16_t port,
                               std::chrono::milliseconds timeout)
    : host_(std::move(host)), port_(port), timeout_(timeout) {}

ProviderClient::~ProviderClient() { disconnect(); }

std::pair<std::string, std::uint16_t> ProviderClient::parse_endpoint(std::string_view endpoint) {
  const auto colon = endpoint.rfind(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw ConfigError(fmt::format("provider endpoint '{}' is not host:port", endpoint));
  }
  unsigned port = 0;
  const auto digits = endpoint.substr(colon + 1);
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), port);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || port == 0 || port > 65535) {
    throw ConfigError(fmt::format("provider endpoint '{}' has a bad port", endpoint));
  }
  return {std::string(endpoint.substr(0, colon)), static_cast<std::uint16_t>(port)};
}

ProviderClient ProviderClient::from_endpoint(std::string_view endpoint,
                                             std::chrono::milliseconds timeout) {
  auto [host, port] = parse_endpoint(endpoint);
  return ProviderClient(std::move(host), port, timeout);
}

void ProviderClient::connect() {
  if (fd_ >= 0) return;
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port_);
  if (const int rc = ::getaddrinfo(host_.c_str(), service.c_str(), &hints, &res); rc != 0) {
    throw ProviderUnavailable(
        fmt::format("cannot resolve provider {}:{}: {}", host_, port_, ::gai_strerror(rc)));
  }
  int last_errno = 0;
  for (addrinfo* a = res; a != nullptr; a = a->ai_next) {
    const int fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
    if (fd < 0) {
      last_errno = errno;
      continue;
    }
    if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) {
      fd_ = fd;
      break;
    }
    last_errno = errno;
    ::close(fd);
  }
  ::freeaddrinfo(res);
  if (fd_ < 0) {
    throw ProviderUnavailable(
        fmt::format("cannot connect to provider {}:{}: {}", host_, port_, std::strerror(last_errno)));
  }
  timeval tv{};
  tv.tv_sec = static_cast<time_t>(timeout_.count() / 1000);
  tv.tv_usec = static_cast<suseconds_t>((timeout_.count() % 1000) * 1000);
  ::setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);
  ::setsockopt(fd_, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof tv);
}

void ProviderClient::disconnect() {
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
  buffer_.clear();
}

std::string ProviderClient::read_line() {
  for (;;) {
    if (const auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    char chunk[65536];
    const ssize_t got = ::recv(fd_, chunk, sizeof chunk, 0);
    if (got > 0) {
      buffer_.append(chunk, static_cast<std::size_t>(got));
      continue;
    }
    if (got < 0 && errno == EINTR) continue;
    const std::string why = got == 0 ? "connection closed" : std::strerror(errno);
    disconnect();
    throw ProviderUnavailable(fmt::format("provider {}:{}: {}", host_, port_, why));
  }
}

json ProviderClient::call(json request) {
  connect();
  const std::uint64_t id = next_id_++;
  request["id"] = id;
  const std::string line = request.dump(-1, ' ', false, json::error_handler_t::replace) + "\n";
  std::size_t sent = 0;
  while (sent < line.size()) {
    const ssize_t n = ::send(fd_, line.data() + sent, line.size() - sent, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      const std::string why = std::strerror(errno);
      disconnect();
      throw ProviderUnavailable(fmt::format("provider {}:{}: send failed: {}", host_, port_, why));
    }
    sent += static_cast<std::size_t>(n);
  }

  json reply;
  try {
    reply = json::parse(read_line());
  } catch (const json::parse_error& e) {
    disconnect();
    throw ProviderError(fmt::format("provider reply is not JSON: {}", e.what()));
  }
  if (!reply.is_object() || reply.value("id", json()) != json(id)) {
    disconnect();
    throw ProviderError(fmt::format("provider reply does not answer request {}", id));
  }
  if (!reply.value("ok", false)) {
    throw ProviderError(fmt::format("provider error: {}", reply.value("error", "unspecified")));
  }
  return reply;
}

const ProviderInfo& ProviderClient::info() {
  if (!info_) {
    const json reply = call({{"op", "hello"}});
    ProviderInfo info;
    try {
      info.dim = reply.at("dim").get<std::size_t>();
      info.embed_model = reply.value("embed_model", "");
      info.sentiment_model = reply.value("sentiment_model", "");
    } catch (const json::exception& e) {
      throw ProviderError(fmt::format("bad hello reply: {}", e.what()));
    }
    if (info.dim == 0) throw ProviderError("provider reported dimension 0");
    info_ = info;
  }
  return *info_;
}

namespace {

// Items of a batch reply; a null item is a per-item failure.
const json& reply_items(const json& reply, const char* field, std::size_t expected) {
  const auto it = reply.find(field);
  if (it == reply.end() || !it->is_array() || it->size() != expected) {
    throw ProviderError(fmt::format("provider reply needs '{}' with {} items", field, expected));
  }
  for (std::size_t i = 0; i < expected; ++i) {
    if ((*it)[i].is_null()) {
      std::string why = "unspecified";
      if (const auto errs = reply.find("errors"); errs != reply.end() && errs->is_object()) {
        why = errs->value(std::to_string(i), why);
      }
      throw ProviderError(fmt::format("provider failed on item {}: {}", i, why));
    }
  }
  return *it;
}

std::vector<double> numbers(const json& item) {
  if (!item.is_array()) throw ProviderError("provider item is not an array");
  std::vector<double> out;
  out.reserve(item.size());
  for (const auto& v : item) {
    if (!v.is_number()) throw ProviderError("provider item holds a non-number");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

std::vector<std::vector<double>> ProviderClient::embed(std::span<const std::string> texts) {
  std::vector<std::vector<double>> out;
  out.reserve(texts.size());
  for (std::size_t start = 0; start < texts.size(); start += kMaxBatch) {
    const auto batch = texts.subspan(start, std::min(kMaxBatch, texts.size() - start));
    const json reply = call({{"op", "embed"}, {"batch", std::vector<std::string>(batch.begin(), batch.end())}});
    for (const auto& item : reply_items(reply, "vectors", batch.size())) out.push_back(numbers(item));
  }
  return out;
}

std::vector<std::array<double, 3>> ProviderClient::sentiment(std::span<const std::string> texts) {
  std::vector<std::array<double, 3>> out;
  out.reserve(texts.size());
  for (std::size_t start = 0; start < texts.size(); start += kMaxBatch) {
    const auto batch = texts.subspan(start, std::min(kMaxBatch, texts.size() - start));
    const json reply =
        call({{"op", "sentiment"}, {"batch", std::vector<std::string>(batch.begin(), batch.end())}});
    for (const auto& item : reply_items(reply, "scores", batch.size())) {
      const auto v = numbers(item);
      if (v.size() != 3) throw ProviderError("sentiment item must hold 3 scores");
      out.push_back({v[0], v[1], v[2]});
    }
  }
  return out;
}

}  // namespace crisislens::provider

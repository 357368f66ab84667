#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace crisislens::provider {

// Handshake reply.
struct ProviderInfo {
  std::size_t dim = 0;
  std::string embed_model;
  std::string sentiment_model;
};

inline constexpr std::size_t kMaxBatch = 256;

// Client for the newline-delimited JSON provider protocol (PROTOCOL.md).
// Connects lazily on first use and keeps one connection open. Requests are
// split into batches of at most kMaxBatch. Not thread-safe.
class ProviderClient {
 public:
  ProviderClient(std::string host, std::uint16_t port,
                 std::chrono::milliseconds timeout = std::chrono::seconds(60));
  ~ProviderClient();
  ProviderClient(const ProviderClient&) = delete;
  ProviderClient& operator=(const ProviderClient&) = delete;

  // "host:port". Throws ConfigError.
  static std::pair<std::string, std::uint16_t> parse_endpoint(std::string_view endpoint);
  static ProviderClient from_endpoint(std::string_view endpoint,
                                      std::chrono::milliseconds timeout = std::chrono::seconds(60));

  // Throws ProviderUnavailable, ProviderError.
  const ProviderInfo& info();
  std::vector<std::vector<double>> embed(std::span<const std::string> texts);
  // Score order is (negative, neutral, positive), unvalidated.
  std::vector<std::array<double, 3>> sentiment(std::span<const std::string> texts);

 private:
  nlohmann::json call(nlohmann::json request);
  void connect();
  void disconnect();
  std::string read_line();

  std::string host_;
  std::uint16_t port_;
  std::chrono::milliseconds timeout_;
  int fd_ = -1;
  std::uint64_t next_id_ = 1;
  std::string buffer_;
  std::optional<ProviderInfo> info_;
};

}  // namespace crisislens::provider

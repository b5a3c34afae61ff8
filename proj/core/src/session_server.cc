// Copyright 2026 The RISO Sim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "riso/session_server.h"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "spdlog/spdlog.h"
#include "riso/synthetic_operator.h"

namespace riso {
namespace {

using Clock = std::chrono::steady_clock;

// Beyond this much unsent output, state and belief frames are dropped.
constexpr std::size_t kMaxBacklog = 256 * 1024;
constexpr std::size_t kMaxLine = 64 * 1024;
constexpr int kIdlePollMs = 50;

bool Droppable(const std::string& frame) {
  return frame.starts_with(R"({"type":"state_frame")") ||
         frame.starts_with(R"({"type":"belief_frame")");
}

void SetNonBlocking(int fd) {
  const int flags = fcntl(fd, F_GETFL, 0);
  fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

}  // namespace

SessionServer::SessionServer(ServerOptions options)
    : options_(std::move(options)) {}

SessionServer::~SessionServer() { Stop(); }

absl::Status SessionServer::Start() {
  if (!(options_.realtime_factor > 0.0)) {
    return absl::InvalidArgumentError("realtime_factor must be > 0");
  }
  listen_fd_ = socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) {
    return absl::InternalError(absl::StrCat("socket: ", std::strerror(errno)));
  }
  const int one = 1;
  setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(options_.port));
  if (inet_pton(AF_INET, options_.host.c_str(), &addr.sin_addr) != 1) {
    close(listen_fd_);
    listen_fd_ = -1;
    return absl::InvalidArgumentError(
        absl::StrCat("bad host address '", options_.host, "'"));
  }
  if (bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      listen(listen_fd_, 16) != 0) {
    const std::string why = std::strerror(errno);
    close(listen_fd_);
    listen_fd_ = -1;
    return absl::UnavailableError(
        absl::StrCat("cannot listen on ", options_.host, ":", options_.port,
                     ": ", why));
  }
  socklen_t len = sizeof(addr);
  getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  SetNonBlocking(listen_fd_);
  stop_ = false;
  acceptor_ = std::thread([this] { AcceptLoop(); });
  spdlog::info("session server listening on {}:{}", options_.host, port_);
  return absl::OkStatus();
}

void SessionServer::Stop() {
  stop_ = true;
  if (acceptor_.joinable()) acceptor_.join();
  std::vector<std::thread> threads;
  {
    std::lock_guard<std::mutex> lock(threads_mu_);
    threads.swap(session_threads_);
  }
  for (std::thread& t : threads) t.join();
  if (listen_fd_ >= 0) {
    close(listen_fd_);
    listen_fd_ = -1;
  }
}

void SessionServer::Wait() {
  while (!stop_) std::this_thread::sleep_for(std::chrono::milliseconds(100));
}

void SessionServer::AcceptLoop() {
  std::uint64_t index = 0;
  while (!stop_) {
    pollfd pfd{listen_fd_, POLLIN, 0};
    if (poll(&pfd, 1, kIdlePollMs) <= 0) continue;
    const int fd = accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    const int one = 1;
    setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    SetNonBlocking(fd);
    ++sessions_started_;
    std::lock_guard<std::mutex> lock(threads_mu_);
    session_threads_.emplace_back([this, fd, i = index++] { Serve(fd, i); });
  }
}

void SessionServer::Serve(int fd, std::uint64_t index) {
  SessionOptions opts;
  opts.default_seed = DeriveSeed(options_.base_seed, index);
  opts.model = options_.model;
  Session session(opts);
  spdlog::debug("session {} connected", index);

  const auto period = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(kDt / options_.realtime_factor));
  Clock::time_point next_tick = Clock::now();
  std::string inbuf;
  std::string outbuf;
  auto enqueue = [&](const std::vector<std::string>& frames) {
    for (const std::string& f : frames) {
      if (outbuf.size() > kMaxBacklog && Droppable(f)) continue;
      outbuf += f;
      outbuf += '\n';
    }
  };

  bool open = true;
  while (open && !stop_) {
    int timeout_ms = kIdlePollMs;
    if (session.running()) {
      const auto wait = std::chrono::duration_cast<std::chrono::milliseconds>(
          next_tick - Clock::now());
      timeout_ms = std::clamp<int>(static_cast<int>(wait.count()), 0,
                                   kIdlePollMs);
    }
    pollfd pfd{fd, static_cast<short>(POLLIN | (outbuf.empty() ? 0 : POLLOUT)),
               0};
    poll(&pfd, 1, timeout_ms);

    if (pfd.revents & (POLLIN | POLLHUP | POLLERR)) {
      char buf[4096];
      while (true) {
        const ssize_t n = recv(fd, buf, sizeof(buf), 0);
        if (n > 0) {
          inbuf.append(buf, static_cast<std::size_t>(n));
          continue;
        }
        if (n == 0 || (errno != EAGAIN && errno != EWOULDBLOCK)) open = false;
        break;
      }
      std::size_t pos;
      while ((pos = inbuf.find('\n')) != std::string::npos) {
        std::string line = inbuf.substr(0, pos);
        inbuf.erase(0, pos + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const bool was_running = session.running();
        enqueue(session.OnLine(line));
        if (!was_running && session.running()) next_tick = Clock::now() + period;
      }
      if (inbuf.size() > kMaxLine) {
        inbuf.clear();
        enqueue({EncodeError({kErrBadMessage, "line too long"})});
      }
    }

    if (session.running() && Clock::now() >= next_tick) {
      enqueue(session.Tick());
      next_tick += period;
      // Do not try to catch up after a stall; keep the tick spacing.
      if (next_tick < Clock::now()) next_tick = Clock::now();
      if (session.ended_episode()) {
        RecordEpisode(index, session, *session.ended_episode());
      }
    }

    while (open && !outbuf.empty()) {
      const ssize_t n =
          send(fd, outbuf.data(), outbuf.size(), MSG_NOSIGNAL | MSG_DONTWAIT);
      if (n > 0) {
        outbuf.erase(0, static_cast<std::size_t>(n));
        continue;
      }
      if (n < 0 && errno != EAGAIN && errno != EWOULDBLOCK) open = false;
      break;
    }
  }
  close(fd);
  spdlog::debug("session {} closed", index);
}

void SessionServer::RecordEpisode(std::uint64_t index, const Session& session,
                                  const EpisodeSummary& summary) {
  const EpisodeResult& r = summary.result;
  spdlog::info("session {} episode {}: success={} inputs={}", index,
               ToString(summary.status), r.success, r.human_input_steps);
  if (!options_.results_csv) return;
  std::lock_guard<std::mutex> lock(csv_mu_);
  const bool fresh = !std::filesystem::exists(*options_.results_csv) ||
                     std::filesystem::file_size(*options_.results_csv) == 0;
  std::ofstream out(*options_.results_csv, std::ios::app);
  if (!out) {
    spdlog::error("cannot append to {}", options_.results_csv->string());
    return;
  }
  if (fresh) out << kSessionCsvHeader << "\n";
  out << absl::StrFormat(
      "%d,%s,%s,%d,%s,%s,%d,%d,%.6f,%d,%s\n", index, session.scenario_name(),
      std::string(ToString(session.controller())), session.seed(),
      summary.target.value_or(""), std::string(ToString(summary.status)),
      r.success ? 1 : 0, r.human_input_steps, r.trajectory_length,
      r.wall_steps, r.grasp_type_used ? ToString(*r.grasp_type_used) : "");
}

}  // namespace riso

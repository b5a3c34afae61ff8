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

// TCP front end for Session: newline-delimited JSON, one session per
// connection, each on its own thread.

#ifndef RISO_SESSION_SERVER_H_
#define RISO_SESSION_SERVER_H_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "absl/status/status.h"
#include "riso/session.h"

namespace riso {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = kDefaultPort;  // 0 picks a free port
  // Simulated seconds per wall-clock second; 1 is real time. Must be > 0.
  double realtime_factor = 1.0;
  std::optional<std::filesystem::path> results_csv;
  std::uint64_t base_seed = 0;  // session i defaults to DeriveSeed(base, i)
  RationalityModel model;
};

inline constexpr char kSessionCsvHeader[] =
    "session,scenario,controller,seed,target,status,success,"
    "human_input_steps,trajectory_length_m,wall_steps,grasp_type_used";

class SessionServer {
 public:
  explicit SessionServer(ServerOptions options);
  ~SessionServer();

  SessionServer(const SessionServer&) = delete;
  SessionServer& operator=(const SessionServer&) = delete;

  // Binds and starts accepting. Fails if the port is in use.
  absl::Status Start();
  // Port actually bound (after Start).
  int port() const { return port_; }
  // Stops accepting, closes every session and joins all threads.
  void Stop();
  // Blocks until Stop() is called from another thread.
  void Wait();

  int sessions_started() const { return sessions_started_; }

 private:
  void AcceptLoop();
  void Serve(int fd, std::uint64_t index);
  void RecordEpisode(std::uint64_t index, const Session& session,
                     const EpisodeSummary& summary);

  ServerOptions options_;
  int listen_fd_ = -1;
  int port_ = 0;
  std::atomic<bool> stop_{false};
  std::atomic<int> sessions_started_{0};
  std::thread acceptor_;
  std::mutex threads_mu_;
  std::vector<std::thread> session_threads_;
  std::mutex csv_mu_;
};

}  // namespace riso

#endif  // RISO_SESSION_SERVER_H_

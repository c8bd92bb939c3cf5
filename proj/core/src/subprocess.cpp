//
// Copyright 2026 The DialectEval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>

#include "dialeval/metrics.hpp"
#include "dialeval/nano.hpp"
#include "json.hpp"

namespace dialeval {

namespace {

using nlohmann::json;

// Bidirectional line-protocol client for a child process spawned through
// /bin/sh. The child must emit {"ready": true} before the first request.
struct LineClient {
  std::string command;
  std::chrono::milliseconds timeout{60000};
  pid_t pid = -1;
  int to_child = -1;
  int from_child = -1;
  std::string buffer;
  bool ready = false;

  void Spawn() {
    int in_pipe[2], out_pipe[2];
    if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) {
      throw std::runtime_error("pipe() failed");
    }
    signal(SIGPIPE, SIG_IGN);
    pid = fork();
    if (pid < 0) throw std::runtime_error("fork() failed");
    if (pid == 0) {
      dup2(in_pipe[0], STDIN_FILENO);
      dup2(out_pipe[1], STDOUT_FILENO);
      close(in_pipe[0]);
      close(in_pipe[1]);
      close(out_pipe[0]);
      close(out_pipe[1]);
      execl("/bin/sh", "sh", "-c", command.c_str(), (char*)nullptr);
      _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);
    to_child = in_pipe[1];
    from_child = out_pipe[0];
  }

  int WaitExit() {
    if (to_child >= 0) close(to_child);
    to_child = -1;
    int status = 0;
    if (pid > 0) waitpid(pid, &status, 0);
    pid = -1;
    if (from_child >= 0) close(from_child);
    from_child = -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : 128;
  }

  std::string ReadLine(std::chrono::steady_clock::time_point deadline) {
    for (;;) {
      const auto nl = buffer.find('\n');
      if (nl != std::string::npos) {
        std::string line = buffer.substr(0, nl);
        buffer.erase(0, nl + 1);
        return line;
      }
      const auto now = std::chrono::steady_clock::now();
      if (now >= deadline) throw std::runtime_error("scorer timeout: " + command);
      const auto remaining =
          std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now);
      struct pollfd pfd{from_child, POLLIN, 0};
      const int rv = poll(&pfd, 1, static_cast<int>(remaining.count()));
      if (rv == 0) throw std::runtime_error("scorer timeout: " + command);
      if (rv < 0) throw std::runtime_error("poll() failed");
      char chunk[4096];
      const ssize_t n = read(from_child, chunk, sizeof(chunk));
      if (n <= 0) {
        const int code = WaitExit();
        throw std::runtime_error("child exited with status " +
                                 std::to_string(code) + ": " + command);
      }
      buffer.append(chunk, static_cast<std::size_t>(n));
    }
  }

  void AwaitReady(std::chrono::steady_clock::time_point deadline) {
    if (ready) return;
    const std::string line = ReadLine(deadline);
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || j.value("ready", false) != true) {
      throw std::runtime_error("child did not signal readiness: " + line);
    }
    ready = true;
  }

  void WriteAll(const std::string& data) {
    std::size_t off = 0;
    while (off < data.size()) {
      const ssize_t n = write(to_child, data.data() + off, data.size() - off);
      if (n < 0) throw std::runtime_error("pipe write failed: " + command);
      off += static_cast<std::size_t>(n);
    }
  }

  void Close() {
    if (pid > 0) WaitExit();
    if (to_child >= 0) close(to_child);
    if (from_child >= 0) close(from_child);
    to_child = from_child = -1;
  }
};

}  // namespace

struct SubprocessScorer::Impl {
  LineClient client;
};

SubprocessScorer::SubprocessScorer(std::string command,
                                   std::chrono::milliseconds timeout)
    : impl_(new Impl) {
  impl_->client.command = std::move(command);
  impl_->client.timeout = timeout;
  impl_->client.Spawn();
}

SubprocessScorer::~SubprocessScorer() {
  impl_->client.Close();
  delete impl_;
}

std::vector<double> SubprocessScorer::Score(
    std::span<const MetricRequest> requests) {
  auto& client = impl_->client;
  const auto deadline = std::chrono::steady_clock::now() + client.timeout;
  client.AwaitReady(deadline);

  std::string batch;
  for (const auto& req : requests) {
    json j{{"id", req.id}, {"candidate", req.candidate}};
    if (req.reference) j["reference"] = *req.reference;
    if (req.source) j["source"] = *req.source;
    if (req.language_tag) j["language_tag"] = req.language_tag->Render();
    batch += j.dump();
    batch += '\n';
  }
  client.WriteAll(batch);

  std::map<std::string, double> by_id;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const std::string line = client.ReadLine(deadline);
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("id") ||
        !j.contains("score") || !j["score"].is_number()) {
      throw std::runtime_error("malformed scorer response: " + line);
    }
    const auto id = j["id"].get<std::string>();
    const double score = j["score"].get<double>();
    if (!std::isfinite(score)) {
      throw std::runtime_error("non-finite score for id: " + id);
    }
    const bool known =
        std::any_of(requests.begin(), requests.end(),
                    [&](const MetricRequest& r) { return r.id == id; });
    if (!known) throw std::runtime_error("response for unknown id: " + id);
    if (!by_id.emplace(id, score).second) {
      throw std::runtime_error("duplicate response for id: " + id);
    }
  }

  std::vector<double> scores;
  scores.reserve(requests.size());
  std::string missing;
  for (const auto& req : requests) {
    const auto it = by_id.find(req.id);
    if (it == by_id.end()) {
      if (!missing.empty()) missing += ", ";
      missing += req.id;
    } else {
      scores.push_back(it->second);
    }
  }
  if (!missing.empty()) {
    throw std::runtime_error("missing scorer responses for ids: " + missing);
  }
  return scores;
}

BatchScorer SubprocessScorer::AsBatchScorer() {
  return [this](std::span<const MetricRequest> requests) {
    return Score(requests);
  };
}

struct SubprocessLabeler::Impl {
  LineClient client;
};

SubprocessLabeler::SubprocessLabeler(std::string command) : impl_(new Impl) {
  impl_->client.command = std::move(command);
  impl_->client.Spawn();
}

SubprocessLabeler::~SubprocessLabeler() {
  impl_->client.Close();
  delete impl_;
}

std::vector<std::optional<DialectTag>> SubprocessLabeler::Label(
    const std::vector<std::string>& sentences) {
  auto& client = impl_->client;
  const auto deadline = std::chrono::steady_clock::now() + client.timeout;
  client.AwaitReady(deadline);

  std::string batch;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    batch += json{{"id", std::to_string(i)}, {"candidate", sentences[i]}}.dump();
    batch += '\n';
  }
  client.WriteAll(batch);

  std::vector<std::optional<DialectTag>> labels(sentences.size());
  std::vector<bool> seen(sentences.size(), false);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const std::string line = client.ReadLine(deadline);
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("id") || !j.contains("label")) {
      throw std::runtime_error("malformed labeler response: " + line);
    }
    std::size_t index = 0;
    try {
      index = std::stoul(j["id"].get<std::string>());
    } catch (const std::exception&) {
      throw std::runtime_error("bad labeler response id: " + line);
    }
    if (index >= sentences.size() || seen[index]) {
      throw std::runtime_error("unexpected labeler response id: " + line);
    }
    seen[index] = true;
    const auto label = j["label"].get<std::string>();
    if (!label.empty()) labels[index] = DialectTag::Parse(label);
  }
  return labels;
}

}  // namespace dialeval

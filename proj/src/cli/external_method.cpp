#include "clubench/cli/external_method.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <csignal>
#include <cstring>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include "clubench/error.hpp"
#include "clubench/gzip_io.hpp"

namespace clubench::cli {

namespace {

void replace_all(std::string& s, std::string_view from, const std::string& to) {
  for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

std::vector<std::string> split_words(const std::string& command) {
  std::vector<std::string> words;
  std::string current;
  bool in_word = false;
  char quote = 0;
  for (char c : command) {
    if (quote) {
      if (c == quote) quote = 0;
      else current += c;
    } else if (c == '"' || c == '\'') {
      quote = c;
      in_word = true;
    } else if (c == ' ' || c == '\t') {
      if (in_word) words.push_back(std::move(current));
      current.clear();
      in_word = false;
    } else {
      current += c;
      in_word = true;
    }
  }
  if (quote) throw Error(Errc::BadArgument, "unterminated quote in external command");
  if (in_word) words.push_back(std::move(current));
  return words;
}

Labels parse_output(const std::string& out, int k, Eigen::Index n) {
  std::vector<int> values;
  std::string problem;
  io::for_each_line(out, [&](std::size_t line_no, std::string_view line) {
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    int v = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc() || ptr != line.data() + line.size() || line.empty()) {
      if (problem.empty()) problem = "line " + std::to_string(line_no) + " is not an integer";
      return;
    }
    values.push_back(v);
  });
  if (!problem.empty()) throw Error(Errc::ExternalFailure, problem);
  if (static_cast<Eigen::Index>(values.size()) != n) {
    throw Error(Errc::ExternalFailure, "expected " + std::to_string(n) + " labels, got " +
                                           std::to_string(values.size()));
  }
  std::vector<char> seen(static_cast<std::size_t>(k) + 1, 0);
  for (int v : values) {
    if (v < 1 || v > k) throw Error(Errc::ExternalFailure, "label " + std::to_string(v) + " outside 1.." + std::to_string(k));
    seen[static_cast<std::size_t>(v)] = 1;
  }
  if (std::find(seen.begin() + 1, seen.end(), 0) != seen.end()) {
    throw Error(Errc::ExternalFailure, "labels do not use every cluster 1.." + std::to_string(k));
  }
  return Eigen::Map<const Labels>(values.data(), n);
}

}  // namespace

ExternalMethodSpec ExternalMethodSpec::parse(const std::string& command, std::chrono::seconds timeout) {
  if (timeout.count() <= 0) throw Error(Errc::BadArgument, "timeout must be positive");
  ExternalMethodSpec spec{split_words(command), timeout};
  if (spec.argv_template.empty()) throw Error(Errc::BadArgument, "empty external command");
  auto mentions = [&](std::string_view p) {
    return std::any_of(spec.argv_template.begin(), spec.argv_template.end(),
                       [&](const std::string& w) { return w.find(p) != std::string::npos; });
  };
  if (!mentions("{data}") || !mentions("{k}")) {
    throw Error(Errc::BadArgument, "external command needs both {data} and {k} placeholders");
  }
  return spec;
}

std::vector<std::string> ExternalMethodSpec::expand(const std::filesystem::path& data_file, int k) const {
  auto argv = argv_template;
  for (auto& w : argv) {
    replace_all(w, "{data}", data_file.string());
    replace_all(w, "{k}", std::to_string(k));
  }
  return argv;
}

Labels run_external(const ExternalMethodSpec& spec, const std::filesystem::path& data_file, int k,
                    Eigen::Index n_points) {
  const auto argv_strings = spec.expand(data_file, k);
  std::vector<char*> argv;
  for (const auto& s : argv_strings) argv.push_back(const_cast<char*>(s.c_str()));
  argv.push_back(nullptr);

  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) throw Error(Errc::ExternalFailure, "pipe failed");
  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw Error(Errc::ExternalFailure, "fork failed");
  }
  if (pid == 0) {
    // Own process group, so a timeout also reaches the tool's children.
    ::setpgid(0, 0);
    ::dup2(fds[1], STDOUT_FILENO);
    const int devnull = ::open("/dev/null", O_RDONLY);
    if (devnull >= 0) ::dup2(devnull, STDIN_FILENO);
    ::execvp(argv[0], argv.data());
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  ::close(fds[1]);

  std::string output;
  bool timed_out = false;
  const auto deadline = std::chrono::steady_clock::now() + spec.timeout;
  char buffer[4096];
  while (true) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd pfd{fds[0], POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (ready < 0 && errno == EINTR) continue;
    if (ready == 0) continue;
    const auto got = ::read(fds[0], buffer, sizeof(buffer));
    if (got < 0 && errno == EINTR) continue;
    if (got <= 0) break;
    output.append(buffer, static_cast<std::size_t>(got));
  }
  ::close(fds[0]);
  if (timed_out) ::kill(-pid, SIGKILL);
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }

  const std::string what = argv_strings.front() + " (k=" + std::to_string(k) + ")";
  if (timed_out) throw Error(Errc::ExternalFailure, what + " timed out");
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    throw Error(Errc::ExternalFailure, what + " exited with status " + std::to_string(code));
  }
  try {
    return parse_output(output, k, n_points);
  } catch (const Error& e) {
    throw Error(Errc::ExternalFailure, what + ": " + e.what());
  }
}

}  // namespace clubench::cli

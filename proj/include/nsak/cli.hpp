// Copyright 2026 The nsak Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 success, 1 a verdict failed, 2 usage.

#ifndef NSAK_CLI_HPP_
#define NSAK_CLI_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace nsak {

enum class OutputFormat { Human, LineRecord };

struct RunConfig {
  std::uint64_t fuel = 1000000;
  std::uint32_t B = 2;
  std::uint64_t N = 8;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
  unsigned cap_exp = 60;
  OutputFormat format = OutputFormat::Human;
  std::vector<std::string> inputs;
};

// One result line. Human form is free text; line-record form is
// `record=<kind> key=value ...`, values quoted when they contain spaces.
// Line records never carry timings, so equal configurations print equal bytes.
class Reporter {
 public:
  Reporter(std::ostream& out, OutputFormat format) : out_(out), format_(format) {}

  using Fields = std::vector<std::pair<std::string, std::string>>;
  void emit(const std::string& kind, const Fields& fields, const std::string& human);
  OutputFormat format() const { return format_; }

 private:
  std::ostream& out_;
  OutputFormat format_;
};

// The `demo` constructions and the `selftest` battery; both return an exit code.
int run_demo(const std::string& name, const RunConfig& cfg, Reporter& rep);
std::vector<std::string> demo_names();
int run_selftest(const RunConfig& cfg, Reporter& rep);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nsak

#endif  // NSAK_CLI_HPP_

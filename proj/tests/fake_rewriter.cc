// Copyright 2026 The CapQA Authors.
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

// Stand-in for an external rewriter service. Speaks the JSONL protocol on
// stdin/stdout with a fixed rewrite table.
//
//   fake_rewriter            table lookup, unknown questions echoed back
//   fake_rewriter --echo     every question echoed back
//   fake_rewriter --sleep S  wait S seconds before answering
//   fake_rewriter --fail     exit 3 without answering
//   fake_rewriter --append W append " W" before the question mark

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <thread>

#include "capqa/augment.h"

int main(int argc, char** argv) {
  bool echo = false;
  std::string append;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--echo") {
      echo = true;
    } else if (arg == "--fail") {
      return 3;
    } else if (arg == "--sleep" && i + 1 < argc) {
      std::this_thread::sleep_for(std::chrono::duration<double>(std::atof(argv[++i])));
    } else if (arg == "--append" && i + 1 < argc) {
      append = argv[++i];
    }
  }
  const std::map<std::string, std::string> table = {
      {"Is the girl who is to the left of the sailboats wearing a backpack?",
       "Does the girl to the left of the sailboats carry a backpack?"},
      {"How many cars are visible?", "How many cars are we looking at?"},
  };
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.empty()) continue;
    const capqa::RewriteRequest request = capqa::RequestFromJson(line);
    capqa::RewriteResponse response;
    response.request_id = request.request_id;
    if (!append.empty()) {
      std::string text = request.text;
      if (!text.empty() && text.back() == '?') text.pop_back();
      response.rewrites.push_back(text + " " + append + "?");
    } else if (auto it = table.find(request.text); it != table.end() && !echo) {
      response.rewrites.push_back(it->second);
    } else {
      response.rewrites.push_back(request.text);
    }
    std::cout << capqa::ResponseToJson(response) << std::endl;
  }
  return 0;
}

// Copyright 2026 The floqlab Authors
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

#include <CLI11.hpp>
#include <iostream>

#include "floq/app/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"floqlab: driven power-law spin chain experiments"};
  app.set_version_flag("--version", FLOQ_VERSION);
  app.require_subcommand(1);

  floq::app::RunOptions opt;
  int threads = 0;
  for (const auto& name : floq::app::kSubcommands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", opt.config_path, "experiment config (JSON)")->required();
    sub->add_option("--set", opt.overrides, "override key=value, dotted path")
        ->allow_extra_args(false);
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::NonNegativeNumber);
    sub->callback([&, name, sub] {
      opt.subcommand = name;
      if (sub->count("--threads")) opt.threads = threads;
    });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : floq::app::kExitSchema;
  }
  return floq::app::run(opt, std::cerr);
}

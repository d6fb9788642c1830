#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swarmforage/bench.hpp"

namespace swarmforage {

struct ExperimentEntry {
  std::string name;
  double beta_send = 0.0;
  double beta_receive = 0.0;
  Controller controller = Controller::Utility;
};

// A parsed suite file. Without an `experiments` list the default eleven-row
// suite is used.
struct Suite {
  SimConfig base = desk_scale_config();
  int replicates = 10;
  std::uint64_t seed_base = 1;
  // 0 = hardware concurrency.
  unsigned threads = 0;
  std::vector<ExperimentEntry> experiments;

  std::vector<ExperimentSpec> expand() const;
};

Suite desk_scale_suite();
Suite paper_scale_suite();

// YAML text. Unknown keys are errors. `paper_scale` picks the starting
// preset; `preset: paper` in the file does the same.
Suite parse_suite(std::string_view text, bool paper_scale = false);
Suite load_suite(const std::filesystem::path& path, bool paper_scale = false);

}  // namespace swarmforage

#pragma once

#include <optional>
#include <ostream>

#include "hpst/verify.hpp"

namespace hpst::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kIo = 3 };

// Test-only knobs. The installed binary always runs with the defaults.
struct Hooks {
  std::optional<ClosedFormSet> closed_forms;
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const Hooks& hooks = {});

}  // namespace hpst::cli

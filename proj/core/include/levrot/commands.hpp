#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "levrot/config.hpp"
#include "levrot/report.hpp"

namespace levrot::studio {

/// Tables produced by one verb plus non-fatal warnings (e.g. unreachable resonances).
struct CommandResult {
  std::vector<ReportTable> tables;
  std::vector<std::string> warnings;
};

CommandResult cmd_table1(const RunConfig& cfg);
CommandResult cmd_fig2_map(const RunConfig& cfg, int threads);
CommandResult cmd_fig4_curves(const RunConfig& cfg, int threads);
CommandResult cmd_thermal(const RunConfig& cfg);
CommandResult cmd_charges(const RunConfig& cfg);
CommandResult cmd_stability_chart(const RunConfig& cfg, int threads);
CommandResult cmd_dynamics(const RunConfig& cfg);
CommandResult cmd_spin(const RunConfig& cfg);
CommandResult cmd_resonance(const RunConfig& cfg);
CommandResult cmd_coupling(const RunConfig& cfg);
CommandResult cmd_jc(const RunConfig& cfg);

/// CLI verbs in display order.
const std::vector<std::string>& command_names();
/// Dispatches a verb; throws InvalidArgument for an unknown one.
CommandResult run_command(std::string_view verb, const RunConfig& cfg, int threads);

}  // namespace levrot::studio

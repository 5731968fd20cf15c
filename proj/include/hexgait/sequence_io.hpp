#pragma once

#include <iosfwd>
#include <string>

#include "hexgait/model.hpp"

namespace hexgait {

/// Sequence file: every state with its pose, support and fault masks, feet
/// and step length. Planning times are left out so that reruns with the same
/// seed produce identical files.
void write_sequence_json(std::ostream& os, const SolutionSequence& seq);
SolutionSequence read_sequence_json(std::istream& is);
void save_sequence(const std::string& path, const SolutionSequence& seq);
SolutionSequence load_sequence(const std::string& path);

/// Gait diagram data, one row per transition. Leg columns hold S (support),
/// W (swing) or F (fault leg, swinging with no foothold).
void write_gait_csv(std::ostream& os, const SolutionSequence& seq);

}  // namespace hexgait

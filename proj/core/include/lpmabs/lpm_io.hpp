#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "lpmabs/lpm.hpp"

namespace lpmabs {

struct StoredLpm {
  LocalProcessModel model;
  std::optional<double> diversity;
};

/// Writes `lpm_NNN.pnml` per model plus `ranking.txt`, one tab-separated line per
/// model with percent-encoded `key=value` fields: rank, support, diversity (when
/// given), activities (comma-separated), file and tree (when known).
/// `diversity` is either empty or has one entry per model.
void write_lpm_directory(const std::filesystem::path& dir, std::span<const LocalProcessModel> models,
                         std::span<const double> diversity = {});

/// Reads a directory written by `write_lpm_directory`. Without `ranking.txt` every
/// `*.pnml` file is loaded in file-name order and ranked by that order. A path to a
/// single PNML file yields one model. Throws ParseError / Error on bad input.
std::vector<StoredLpm> read_lpm_directory(const std::filesystem::path& path);

}  // namespace lpmabs

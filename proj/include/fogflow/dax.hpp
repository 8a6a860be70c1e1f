#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <fogflow/workflow.hpp>

namespace fogflow {

// Execution rate at which a DAX runtime (seconds) converts to task length.
inline constexpr double kReferenceMips = 1000.0;

// Reads a Pegasus DAX document.
//
// Each <job> becomes a task numbered in document order, with length
// runtime * kReferenceMips. A file that one job lists with link="output" (or
// "out") and another with link="input" (or "in") produces a data edge from
// producer to consumer; sizes are bytes and are stored as megabits. Several
// files between the same pair are summed into one edge. <child>/<parent>
// declarations with no shared file add a zero-size edge.
//
// Throws ParseError for malformed XML or missing attributes, and
// ValidationError for duplicate job ids, unknown references, or cycles.
Workflow parse_dax(std::string_view document);
Workflow parse_dax_file(std::filesystem::path const & path);

// Writes a DAX document that parse_dax reads back to the same tasks and edges.
// Each edge becomes one synthetic file; zero-size edges become
// <child>/<parent> declarations.
std::string write_dax(Workflow const & workflow);

} // namespace fogflow

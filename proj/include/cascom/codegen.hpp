#pragma once

#include <string>
#include <vector>

#include "cascom/knowledge_base.hpp"
#include "cascom/solution.hpp"

namespace cascom {

class CodegenError : public Error {
 public:
  using Error::Error;
};

struct BundleFile {
  std::string filename;
  std::string content;

  bool operator==(const BundleFile&) const = default;
};

/// The files a user would otherwise write by hand: `<name>.vsd.xml`,
/// `<name>.wrappers.properties` and `<name>.plan.txt`, in that order.
struct ConfigBundle {
  std::string name;
  std::vector<BundleFile> files;

  bool operator==(const ConfigBundle&) const = default;
};

/// An additional output requested alongside the task's own stream.
struct ExtraOutput {
  PropertyRef property;
  Solution solution;
};

/// Renders the bundle for `task` from its chosen solution plus extras.
///
/// Nodes of all solutions are merged; a component must be wired identically
/// everywhere it appears. Components are emitted in dependency order with
/// ties broken by id, sensors sorted by id. Throws CodegenError when a
/// solution is invalid, two outputs share a property id (case-insensitive),
/// or a component is wired inconsistently.
ConfigBundle generate_bundle(const KnowledgeBase& kb, const TaskDescription& task,
                             const Solution& primary, const std::vector<ExtraOutput>& extras);

/// Writes every bundle file into `directory` (created if missing).
void write_bundle(const ConfigBundle& bundle, const std::string& directory);

}  // namespace cascom

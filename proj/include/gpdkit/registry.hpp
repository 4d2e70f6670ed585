#pragma once

#include "gpdkit/dsl.hpp"

namespace gpdkit::registry {

std::vector<std::string> example_names();

/// Builds the named example as a Document (throws on unknown names).
dsl::Document example_document(const std::string& name);

/// The canonical DSL text of the named example.
std::string example_text(const std::string& name);

}  // namespace gpdkit::registry

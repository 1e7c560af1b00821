#pragma once

#include "berger/manifold.hpp"
#include "berger/map_spec.hpp"

#include <filesystem>
#include <memory>
#include <string>

namespace berger {

/// Manifold description from JSON text. Keys: dimension (optional, must
/// match the coordinate count), coordinates, metric, F, V, alpha, domain,
/// name. Throws SpecError on malformed JSON or shapes, ParseError on
/// expression errors.
ManifoldSource parse_manifold_manifest(const std::string& text, const std::string& default_name = "manifold");

/// A built-in name ("flat2", "flat4") or a path to a manifold manifest.
ManifoldSpec load_manifold(const std::string& path_or_builtin);

/// Map manifest: source and target are built-in names or paths relative to
/// the manifest's directory.
MapSpec load_map(const std::string& path);

}  // namespace berger

#pragma once

#include <string>

#include "box2el/embedding.hpp"

namespace box2el {

// Checkpoints are JSON documents: a header (format version, dim, seed, role
// mode, signature hash, name tables) plus one base64 little-endian f64 blob
// per parameter block. Loading validates the signature hash.
void save_checkpoint(const EmbeddingStore& store, const std::string& path);
EmbeddingStore load_checkpoint(const std::string& path);

std::string checkpoint_to_string(const EmbeddingStore& store);
EmbeddingStore checkpoint_from_string(const std::string& text);

}  // namespace box2el
